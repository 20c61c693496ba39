#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "derivkit/darboux.hpp"
#include "derivkit/families.hpp"
#include "derivkit/image_mz.hpp"
#include "derivkit/simplicity.hpp"

namespace derivkit {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "derivkit.report/1";

/// Short statement of the result each theorem tag refers to.
inline std::string theorem_statement(const std::string& tag) {
  static const std::map<std::string, std::string> s{
      {"T2.1", "family A with a1 = 0 is simple iff a0 is a nonzero constant and deg a2 >= 1"},
      {"T4.1", "family A with a1 constant is simple iff a0 is a nonzero constant and deg a2 >= 1"},
      {"T4.2",
       "family A is simple iff a0 is a nonzero constant, deg a1 >= 1 or deg a2 >= 1, and no nonzero "
       "rational l satisfies a2 = l*a1 - l^2*a0"},
      {"REF15", "family A with a2 constant and deg a1 >= 1 is simple iff a0 is a nonzero constant"},
      {"P2.2", "for simple family B, x is not in the image"},
      {"C2.3", "family B (a0 constant): the image is Mathieu-Zhao iff D is not simple"},
      {"T5.1",
       "d/dx + sum gamma_i(x) y_i^k_i d/dy_i with all gamma_i nonzero: the image is Mathieu-Zhao iff "
       "every k_i = 1 and every gamma_i is constant"},
      {"C5.2", "d/dx + sum gamma_i(x) y_i^k_i d/dy_i: the image is Mathieu-Zhao iff D is locally finite"},
      {"T5.3",
       "sum gamma_i y_i^k_i d/dy_i, n >= 2, gamma_i nonzero constants: the image is Mathieu-Zhao iff "
       "every k_i <= 1"},
      {"P6.3-necessary",
       "y^alpha d/dx + (a2 y^(beta+1) + a1 y^beta + a0) d/dy, alpha <= beta: simplicity requires a0 a "
       "nonzero constant, deg a1 >= 1 or deg a2 >= 1, and no nonzero rational l with "
       "a2 = l*a1 + (-1)^beta l^(beta+1) a0"},
  };
  auto it = s.find(tag);
  return it == s.end() ? "" : it->second;
}

inline Json theorem_json(const std::string& tag) { return {{"tag", tag}, {"statement", theorem_statement(tag)}}; }

inline std::string str(const UniPoly& p) { return to_string(p, "x"); }
inline std::string str(const MultiPoly& p) { return to_string(p); }
inline std::string str(const Rat& r) { return to_string(r); }

inline Json family_json(const Family& fam) {
  Json j;
  j["name"] = family_name(fam);
  if (const auto* f = std::get_if<FamilyA>(&fam)) {
    j["a2"] = str(f->a2);
    j["a1"] = str(f->a1);
    j["a0"] = str(f->a0);
  } else if (const auto* f = std::get_if<FamilyB>(&fam)) {
    j["a1"] = str(f->a1);
    j["a0"] = str(f->a0);
  } else if (const auto* f = std::get_if<FamilyConj>(&fam)) {
    j["alpha"] = f->alpha;
    j["beta"] = f->beta;
    j["a2"] = str(f->a2);
    j["a1"] = str(f->a1);
    j["a0"] = str(f->a0);
  } else if (const auto* f = std::get_if<FamilyDiagX>(&fam)) {
    j["components"] = Json::array();
    for (const auto& c : f->comps) j["components"].push_back({{"gamma", str(c.gamma)}, {"k", c.k}});
    j["y_names"] = f->y_names;
  } else if (const auto* f = std::get_if<FamilyDiag>(&fam)) {
    j["components"] = Json::array();
    for (const auto& c : f->comps) j["components"].push_back({{"gamma", str(c.gamma)}, {"k", c.k}});
  }
  return j;
}

inline Json conditions_json(const ConditionRecord& c) {
  Json j{{"a0_unit", c.a0_unit}, {"degree_condition", c.degree_condition}};
  j["no_l"] = c.no_l ? Json(*c.no_l) : Json(nullptr);
  return j;
}

inline Json generators_json(const std::vector<MultiPoly>& gens) {
  Json a = Json::array();
  for (const auto& g : gens) a.push_back(str(g));
  return a;
}

inline Json simplicity_json(const SimplicityVerdict& v, const Derivation& d) {
  Json j{{"simple", v.simple}, {"theorem", theorem_json(v.theorem)}, {"conditions", conditions_json(v.conditions)}};
  j["certificates"] = Json::array();
  for (const auto& c : v.certificates) {
    if (const auto* s = std::get_if<StableIdeal>(&c))
      j["certificates"].push_back({{"kind", "stable_ideal"},
                                   {"generators", generators_json(s->generators)},
                                   {"verified", verify_stable_ideal(d, s->generators)}});
    else if (const auto* l = std::get_if<LValue>(&c))
      j["certificates"].push_back({{"kind", "l_value"}, {"l", str(l->l)}});
    else
      j["certificates"].push_back({{"kind", "conditions"}, {"conditions", conditions_json(std::get<ConditionRecord>(c))}});
  }
  return j;
}

inline Json necessary_json(const NecessaryResult& r, const Derivation& d) {
  Json j{{"theorem", theorem_json("P6.3-necessary")}};
  if (const auto* f = std::get_if<NecessaryFail>(&r)) {
    j["necessary"] = "fail";
    j["simple"] = false;
    j["conditions"] = conditions_json(f->conditions);
    j["witness"] = {{"generators", generators_json(f->witness.generators)},
                    {"verified", verify_stable_ideal(d, f->witness.generators)}};
    j["l_witness"] = f->l ? Json(str(*f->l)) : Json(nullptr);
  } else {
    j["necessary"] = "pass";
    j["simple"] = nullptr;
    j["note"] = "necessary conditions hold; no sufficiency claim is made";
  }
  return j;
}

inline Json nonmember_json(const CertifiedNonMember& c) {
  Json j{{"target", str(c.target)},
         {"theorem", theorem_json(c.theorem)},
         {"claim", c.claim},
         {"sanity_bound", c.sanity_bound}};
  j["m"] = c.m ? Json(*c.m) : Json(nullptr);
  return j;
}

inline Json mz_json(const MzVerdict& v) {
  Json j{{"mz", v.mz}, {"theorem", theorem_json(v.theorem)}};
  j["locally_finite"] = v.locally_finite ? Json(*v.locally_finite) : Json(nullptr);
  j["nonmember"] = v.nonmember ? nonmember_json(*v.nonmember) : Json(nullptr);
  j["one_preimage"] = v.one_preimage ? Json(str(*v.one_preimage)) : Json(nullptr);
  j["note"] = v.note;
  return j;
}

inline Json bounds_json(const SearchBounds& b) {
  return {{"n_max", b.n_max}, {"d0_deg_max", b.d0_deg_max}, {"cx_deg_max", b.cx_deg_max},
          {"residual_effort", b.residual_effort}};
}

inline std::string outcome_name(const SearchOutcome& o) {
  static const char* names[] = {"found", "none-up-to-bounds", "undecided"};
  return names[o.index()];
}

inline Json search_json(const SearchOutcome& o, const SearchBounds& b) {
  Json j{{"bounds", bounds_json(b)}, {"outcome", outcome_name(o)}, {"hits", Json::array()}};
  j["undecided"] = Json::array();
  if (const auto* f = std::get_if<Found>(&o)) {
    for (const auto& h : f->hits) {
      Json lam = Json::array();
      for (const auto& l : h.lambda) lam.push_back(str(l));
      j["hits"].push_back({{"n", h.n},
                           {"d1", str(h.lambda.back())},
                           {"d0", str(h.lambda.front())},
                           {"lambda", lam},
                           {"F", str(h.pair.F)},
                           {"cofactor", str(h.pair.cofactor)},
                           {"free_params", h.free_params},
                           {"status", "verified"}});
    }
    j["undecided"] = f->undecided;
  } else if (const auto* u = std::get_if<UndecidedResidual>(&o)) {
    j["undecided"].push_back(u->description);
  }
  return j;
}

inline Json image_json(const ImageResult& r, const MultiPoly& target, unsigned bound) {
  Json j{{"target", str(target)}, {"bound", bound}};
  if (const auto* m = std::get_if<Member>(&r)) {
    j["status"] = "member";
    j["preimage"] = str(m->preimage);
    j["kernel_dim"] = m->kernel_dim;
  } else if (std::holds_alternative<NotFoundUpTo>(r)) {
    j["status"] = "not-found-up-to";
  } else {
    j["status"] = "certified-non-member";
    j["certificate"] = nonmember_json(std::get<CertifiedNonMember>(r));
  }
  return j;
}

inline Json scan_row_json(const ScanRow& r) {
  Json j{{"alpha", r.alpha}, {"a2", str(r.cell.a2)}, {"a1", str(r.cell.a1)}, {"a0", str(r.cell.a0)},
         {"necessary", r.necessary ? "pass" : "fail"}};
  j["l_witness"] = r.failure && r.failure->l ? Json(str(*r.failure->l)) : Json(nullptr);
  j["witness"] = r.failure ? generators_json(r.failure->witness.generators) : Json(nullptr);
  j["witness_verified"] = r.failure ? Json(r.witness_verified) : Json(nullptr);
  j["darboux_status"] = r.darboux_status;
  if (r.search) {
    Json hits = Json::array();
    if (const auto* f = std::get_if<Found>(&*r.search))
      for (const auto& h : f->hits) hits.push_back(str(h.pair.F));
    j["darboux_hits"] = hits;
  }
  j["bounds"] = bounds_json(r.bounds);
  return j;
}

namespace detail {

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

inline void render_tree(const Json& v, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (auto it = v.begin(); it != v.end(); ++it) {
    const Json& val = it.value();
    const bool scalars =
        val.is_array() && std::all_of(val.begin(), val.end(), [](const Json& e) { return e.is_primitive(); });
    if (val.is_primitive()) {
      os << pad << it.key() << ": " << scalar_text(val) << "\n";
    } else if (scalars) {
      os << pad << it.key() << ": [";
      for (std::size_t i = 0; i < val.size(); ++i) os << (i ? ", " : "") << scalar_text(val[i]);
      os << "]\n";
    } else if (val.is_array()) {
      os << pad << it.key() << ":\n";
      for (const auto& e : val) {
        os << pad << "  -\n";
        if (e.is_object())
          render_tree(e, indent + 2, os);
        else
          os << pad << "    " << scalar_text(e) << "\n";
      }
    } else {
      os << pad << it.key() << ":\n";
      render_tree(val, indent + 1, os);
    }
  }
}

}  // namespace detail

/// Deterministic text form of a report. Timing is omitted so equal
/// inputs give identical text.
inline std::string render_text(const Json& report) {
  std::ostringstream os;
  os << "derivkit " << report.value("command", "") << "\n";
  os << "status: " << report.value("status", "") << "\n";
  os << "exit code: " << report.value("exit_code", 0) << "\n";
  Json body = Json::object();
  for (auto it = report.begin(); it != report.end(); ++it) {
    const auto& k = it.key();
    if (k == "schema" || k == "command" || k == "status" || k == "exit_code" || k == "timing_ms") continue;
    body[k] = it.value();
  }
  detail::render_tree(body, 0, os);
  return os.str();
}

}  // namespace derivkit
