#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "derivkit/parse.hpp"
#include "derivkit/report.hpp"

namespace derivkit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitUnsupported = 3;
inline constexpr int kExitIncomplete = 4;

namespace detail {

struct CliOptions {
  bool json = false;
  std::optional<std::uint64_t> seed;
  std::string out_path;

  std::string derivation;
  std::string target;
  unsigned bound = 8;
  SearchBounds search{3, 3, 4, 8};
  SearchBounds scan{2, 2, 3, 8};
  unsigned alpha = 2;
  std::string grid_path;
  unsigned random_cells = 0;
  std::string jsonl_path;
};

struct Outcome {
  int code = kExitOk;
  std::string status;
  Json result = Json::object();
  Json family = nullptr;
  Json error = nullptr;
};

inline Outcome unsupported(const std::string& msg) {
  Outcome o;
  o.code = kExitUnsupported;
  o.status = "unsupported";
  o.error = {{"kind", "unsupported"}, {"message", msg}};
  return o;
}

inline Outcome run_analyze(const CliOptions& opt) {
  const Derivation d = parse_derivation(opt.derivation);
  const Family fam = recognize_family(d);
  Outcome o;
  o.family = family_json(fam);
  if (std::holds_alternative<GenericFamily>(fam))
    return [&] {
      auto u = unsupported("derivation does not match a supported family");
      u.family = o.family;
      return u;
    }();

  Json simplicity = nullptr;
  std::optional<bool> simple;
  if (const auto* f = std::get_if<FamilyA>(&fam)) {
    auto v = decide_simple_family_a(*f);
    simplicity = simplicity_json(v, d);
    simple = v.simple;
  } else if (const auto* f = std::get_if<FamilyB>(&fam)) {
    auto v = decide_simple_family_a(FamilyA{UniPoly{}, f->a1, uni_const(f->a0)});
    simplicity = simplicity_json(v, d);
    simple = v.simple;
  } else if (const auto* f = std::get_if<FamilyConj>(&fam)) {
    auto r = conjecture_necessary(*f);
    simplicity = necessary_json(r, d);
    if (std::holds_alternative<NecessaryFail>(r)) simple = false;
  }

  Json mz = nullptr;
  std::optional<bool> mz_value;
  Json lf = nullptr;
  if (std::holds_alternative<FamilyB>(fam) || std::holds_alternative<FamilyDiagX>(fam) ||
      std::holds_alternative<FamilyDiag>(fam)) {
    auto v = decide_mz(fam);
    mz = mz_json(v);
    mz_value = v.mz;
    lf = *v.locally_finite;
  }
  o.result = {{"simplicity", simplicity}, {"mz", mz}, {"locally_finite", lf}};
  if (simple)
    o.status = *simple ? "simple" : "not-simple";
  else if (std::holds_alternative<FamilyConj>(fam))
    o.status = "necessary-conditions-hold";
  else
    o.status = *mz_value ? "mz" : "not-mz";
  return o;
}

inline Outcome run_darboux(const CliOptions& opt) {
  const Derivation d = parse_derivation(opt.derivation);
  const Family fam = recognize_family(d);
  Outcome o;
  o.family = family_json(fam);
  std::optional<SearchOutcome> res;
  if (const auto* f = std::get_if<FamilyA>(&fam)) {
    if (f->a2.deg() >= 1 && f->a0.deg() == 0) res = darboux_search_family_a(*f, opt.search);
  } else if (const auto* f = std::get_if<FamilyConj>(&fam)) {
    if (f->alpha == f->beta && f->a2.deg() >= 1) res = darboux_search_conj(*f, opt.search);
  }
  if (!res) {
    auto u = unsupported("Darboux search needs family A with deg a2 >= 1 and a0 a nonzero constant, "
                         "or alpha = beta with deg a2 >= 1");
    u.family = o.family;
    return u;
  }
  o.result = search_json(*res, opt.search);
  if (const auto* f = std::get_if<FamilyA>(&fam)) {
    if (const auto* found = std::get_if<Found>(&*res)) {
      for (std::size_t i = 0; i < found->hits.size(); ++i) {
        auto a = audit_structure(*f, found->hits[i].pair);
        Json aj;
        if (const auto* s = std::get_if<CofactorStructure>(&a))
          aj = {{"ok", true}, {"coverage", s->coverage}};
        else
          aj = {{"ok", false}, {"check", std::get<ViolationReport>(a).check}};
        o.result["hits"][i]["audit"] = aj;
      }
    }
  }
  o.status = outcome_name(*res);
  if (std::holds_alternative<UndecidedResidual>(*res)) o.code = kExitIncomplete;
  return o;
}

inline Outcome run_image(const CliOptions& opt) {
  const Derivation d = parse_derivation(opt.derivation);
  const MultiPoly target = parse_poly(opt.target, d.vars());
  const Family fam = recognize_family(d);
  Outcome o;
  o.family = family_json(fam);
  auto r = image_membership(d, target, opt.bound);
  o.result = image_json(r, target, opt.bound);
  if (std::holds_alternative<Member>(r)) {
    o.status = "member";
    return o;
  }
  o.status = "not-found-up-to";
  o.code = kExitIncomplete;
  auto cert = certified_nonmembership(fam, target);
  if (const auto* c = std::get_if<CertifiedNonMember>(&cert)) o.result["certificate"] = nonmember_json(*c);
  return o;
}

inline Outcome run_mz(const CliOptions& opt) {
  const Derivation d = parse_derivation(opt.derivation);
  const Family fam = recognize_family(d);
  Json fj = family_json(fam);
  try {
    auto v = decide_mz(fam);
    Outcome o;
    o.family = fj;
    o.result = mz_json(v);
    o.status = v.mz ? "mz" : "not-mz";
    return o;
  } catch (const UnsupportedFamily& e) {
    auto u = unsupported(e.what());
    u.family = fj;
    return u;
  }
}

inline std::vector<ScanCell> random_cells(unsigned count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, 2);
  auto poly = [&] {
    std::vector<UniPoly::Term> t;
    int dg = deg(rng);
    for (int e = 0; e <= dg; ++e) t.emplace_back(static_cast<std::uint32_t>(e), Rat(coef(rng)));
    return UniPoly(std::move(t));
  };
  std::vector<ScanCell> cells;
  for (unsigned i = 0; i < count; ++i) {
    ScanCell c{poly(), poly(), uni_const(coef(rng))};
    cells.push_back(std::move(c));
  }
  return cells;
}

inline std::vector<ScanCell> read_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open grid file '" + path + "'", 1);
  std::vector<ScanCell> cells;
  std::string line;
  std::size_t lineno = 0;
  const std::vector<std::string> xv{"x"};
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ParseError("grid line " + std::to_string(lineno) + ": invalid JSON", e.byte);
    }
    ScanCell c;
    for (auto [key, dst] : {std::pair{"a2", &c.a2}, std::pair{"a1", &c.a1}, std::pair{"a0", &c.a0}}) {
      if (!j.contains(key) || !j[key].is_string())
        throw ParseError("grid line " + std::to_string(lineno) + ": missing string field " + key, 1);
      try {
        *dst = parse_poly(j[key].get<std::string>(), xv).to_uni(0);
      } catch (const ParseError& e) {
        throw ParseError("grid line " + std::to_string(lineno) + " field " + key + ": " + e.what(), e.column());
      }
    }
    cells.push_back(std::move(c));
  }
  return cells;
}

inline Outcome run_scan(const CliOptions& opt) {
  std::vector<ScanCell> cells;
  if (!opt.grid_path.empty())
    cells = read_grid(opt.grid_path);
  else
    cells = random_cells(opt.random_cells, opt.seed.value_or(0));
  auto rows = conjecture_scan(opt.alpha, cells, opt.scan);
  Outcome o;
  Json jrows = Json::array();
  std::map<std::string, unsigned> counts;
  bool undecided = false;
  for (const auto& r : rows) {
    jrows.push_back(scan_row_json(r));
    ++counts[r.necessary ? "pass" : "fail"];
    ++counts[r.darboux_status];
    undecided |= r.darboux_status == "undecided";
  }
  Json jc = Json::object();
  for (const auto& [k, v] : counts) jc[k] = v;
  o.result = {{"alpha", opt.alpha}, {"bounds", bounds_json(opt.scan)}, {"rows", jrows}, {"counts", jc}};
  if (!opt.jsonl_path.empty()) {
    std::ofstream f(opt.jsonl_path);
    if (!f) throw ParseError("cannot write evidence file '" + opt.jsonl_path + "'", 1);
    for (const auto& r : jrows) f << r.dump() << "\n";
  }
  o.status = undecided ? "undecided" : "complete";
  if (undecided) o.code = kExitIncomplete;
  return o;
}

}  // namespace detail

/// Runs one CLI invocation (args exclude the program name), writing the
/// report to `out` (or the --out file) and diagnostics to `err`.
/// Returns the process exit code.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::CliOptions opt;
  CLI::App app{"Exact analysis of polynomial derivations", "derivkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", opt.json, "Emit the JSON report");
  app.add_option("--seed", opt.seed, "Seed for randomly generated inputs");
  app.add_option("--out", opt.out_path, "Write the report to this file");

  auto* analyze = app.add_subcommand("analyze", "Family, simplicity and Mathieu-Zhao status");
  analyze->add_option("derivation", opt.derivation, "deriv{...} expression")->required();

  auto* darboux = app.add_subcommand("darboux", "Bounded Darboux polynomial search");
  darboux->add_option("derivation", opt.derivation)->required();
  darboux->add_option("--n-max", opt.search.n_max, "Largest y-degree")->capture_default_str();
  darboux->add_option("--d0-deg", opt.search.d0_deg_max, "Largest x-degree of the cofactor's free part")
      ->capture_default_str();
  darboux->add_option("--cx-deg", opt.search.cx_deg_max, "Largest x-degree of each coefficient")
      ->capture_default_str();
  darboux->add_option("--effort", opt.search.residual_effort, "Resultant budget")->capture_default_str();

  auto* image = app.add_subcommand("image", "Bounded image membership");
  image->add_option("derivation", opt.derivation)->required();
  image->add_option("--target", opt.target, "Target polynomial")->required();
  image->add_option("--bound", opt.bound, "Largest preimage degree")->capture_default_str();

  auto* mz = app.add_subcommand("mz", "Mathieu-Zhao status of the image");
  mz->add_option("derivation", opt.derivation)->required();

  auto* scan = app.add_subcommand("conjecture-scan", "Necessary conditions and search over a grid");
  scan->add_option("--alpha", opt.alpha, "alpha = beta >= 2")->required();
  auto* grid = scan->add_option("--grid", opt.grid_path, "JSON-lines file of {a2, a1, a0}");
  scan->add_option("--random-cells", opt.random_cells, "Number of random cells (uses --seed)")->excludes(grid);
  scan->add_option("--n-max", opt.scan.n_max)->capture_default_str();
  scan->add_option("--d0-deg", opt.scan.d0_deg_max)->capture_default_str();
  scan->add_option("--cx-deg", opt.scan.cx_deg_max)->capture_default_str();
  scan->add_option("--effort", opt.scan.residual_effort)->capture_default_str();
  scan->add_option("--jsonl", opt.jsonl_path, "Also write one JSON line per row to this file");

  std::vector<std::string> argv_store{"derivkit"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  std::string command;
  for (auto* sc : {analyze, darboux, image, mz, scan})
    if (sc->parsed()) command = sc->get_name();

  const auto start = std::chrono::steady_clock::now();
  detail::Outcome o;
  try {
    if (command == "analyze")
      o = detail::run_analyze(opt);
    else if (command == "darboux")
      o = detail::run_darboux(opt);
    else if (command == "image")
      o = detail::run_image(opt);
    else if (command == "mz")
      o = detail::run_mz(opt);
    else
      o = detail::run_scan(opt);
  } catch (const ParseError& e) {
    o = {};
    o.code = kExitParse;
    o.status = "parse-error";
    o.error = {{"kind", "parse"}, {"message", e.what()}, {"column", e.column()}};
  } catch (const UnsupportedFamily& e) {
    o = detail::unsupported(e.what());
  } catch (const UnsupportedShape& e) {
    o = detail::unsupported(e.what());
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  Json input{{"derivation", opt.derivation.empty() ? Json(nullptr) : Json(opt.derivation)}};
  if (command == "image") {
    input["target"] = opt.target;
    input["bound"] = opt.bound;
  } else if (command == "darboux") {
    input["bounds"] = bounds_json(opt.search);
  } else if (command == "conjecture-scan") {
    input["alpha"] = opt.alpha;
    input["grid"] = opt.grid_path.empty() ? Json(nullptr) : Json(opt.grid_path);
    input["random_cells"] = opt.random_cells;
  }
  Json report{{"schema", kReportSchema}, {"command", command}, {"input", input}, {"family", o.family},
              {"status", o.status},      {"exit_code", o.code}, {"result", o.result}, {"error", o.error}};
  report["seed"] = opt.seed ? Json(*opt.seed) : Json(nullptr);
  report["timing_ms"] = ms;

  const std::string text = opt.json ? report.dump(2) + "\n" : render_text(report);
  if (!opt.out_path.empty()) {
    std::ofstream f(opt.out_path);
    if (!f) {
      err << "derivkit: cannot write '" << opt.out_path << "'\n";
      return kExitParse;
    }
    f << text;
  } else {
    out << text;
  }
  if (o.error.is_object()) err << "derivkit: " << o.error.value("message", "") << "\n";
  return o.code;
}

}  // namespace derivkit
