#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "derivkit/darboux.hpp"
#include "derivkit/derivation.hpp"
#include "derivkit/families.hpp"
#include "derivkit/roots.hpp"

namespace derivkit {

struct StableIdeal {
  std::vector<MultiPoly> generators;
};

/// Outcome of the three simplicity conditions: a0 a nonzero constant,
/// deg a1 >= 1 or deg a2 >= 1, and no admissible l. The last is only
/// evaluated when the first holds.
struct ConditionRecord {
  bool a0_unit = false;
  bool degree_condition = false;
  std::optional<bool> no_l;
};

struct LValue {
  Rat l;
};

using Certificate = std::variant<StableIdeal, ConditionRecord, LValue>;

struct SimplicityVerdict {
  bool simple = false;
  std::string theorem;
  ConditionRecord conditions;
  std::vector<Certificate> certificates;

  const StableIdeal* witness() const {
    for (const auto& c : certificates)
      if (const auto* s = std::get_if<StableIdeal>(&c)) return s;
    return nullptr;
  }
  std::optional<Rat> l_value() const {
    for (const auto& c : certificates)
      if (const auto* l = std::get_if<LValue>(&c)) return l->l;
    return std::nullopt;
  }
};

/// True iff (y, P) is the unit ideal, i.e. P(x, 0) is a nonzero constant.
inline bool unit_ideal_check(const MultiPoly& p) {
  auto y = p.var_index("y");
  MultiPoly at0 = y ? p.substitute(*y, Rat(0)) : p;
  return at0.is_constant() && !at0.is_zero();
}

/// All l in Q* with a2 = l*a1 + (-1)^beta * l^(beta+1) * a0.
/// Requires a0 != 0.
inline std::vector<Rat> solve_l_condition(const UniPoly& a2, const UniPoly& a1, const Rat& a0,
                                          unsigned beta) {
  if (sgn(a0) == 0) throw std::invalid_argument("l-condition needs a0 != 0");
  const Rat sign = beta % 2 == 0 ? Rat(1) : Rat(-1);
  auto holds = [&](const Rat& l) {
    Rat lp = 1;
    for (unsigned i = 0; i <= beta; ++i) lp *= l;
    return a2 == a1.scaled(l) + uni_const(sign * lp * a0);
  };
  std::optional<Rat> forced;
  for (const auto& [e, c] : a1.terms())
    if (e >= 1) {
      forced = Rat(a2.coeff(e) / c);
      break;
    }
  if (forced) {
    if (sgn(*forced) != 0 && holds(*forced)) return {*forced};
    return {};
  }
  if (a2.deg() >= 1) return {};
  // sign*a0*l^(beta+1) + a1_0*l - a2_0 = 0
  std::vector<UniPoly::Term> t{{0, -a2.coeff(0)}, {1, a1.coeff(0)}, {beta + 1, sign * a0}};
  std::vector<Rat> out;
  for (const Rat& l : rational_roots(UniPoly(std::move(t))))
    if (sgn(l) != 0) out.push_back(l);
  return out;
}

/// All l in Q* with a2 = l*a1 - l^2*a0.
inline std::vector<Rat> condition3_solve(const UniPoly& a2, const UniPoly& a1, const Rat& a0) {
  return solve_l_condition(a2, a1, a0, 1);
}

namespace detail {

inline MultiPoly xy_var(const char* name) { return MultiPoly::variable(xy_vars(), name); }

inline MultiPoly xy_uni(const UniPoly& p) { return MultiPoly::from_uni(p, xy_vars(), 0); }

/// y + 1/l.
inline MultiPoly shifted_y(const Rat& l) {
  return xy_var("y") + MultiPoly::constant(Rat(1 / l), xy_vars());
}

}  // namespace detail

/// Simplicity of y d/dx + (a2 y^2 + a1 y + a0) d/dy with a stable-ideal
/// witness whenever the answer is negative.
inline SimplicityVerdict decide_simple_family_a(const FamilyA& f) {
  SimplicityVerdict v;
  auto& cond = v.conditions;
  cond.a0_unit = f.a0.deg() == 0;
  cond.degree_condition = f.a1.deg() >= 1 || f.a2.deg() >= 1;
  std::vector<Rat> ls;
  if (cond.a0_unit) {
    ls = condition3_solve(f.a2, f.a1, f.a0.coeff(0));
    cond.no_l = ls.empty();
  }
  v.simple = cond.a0_unit && cond.degree_condition && *cond.no_l;

  if (f.a1.is_zero())
    v.theorem = "T2.1";
  else if (f.a1.deg() == 0)
    v.theorem = "T4.1";
  else if (f.a2.deg() <= 0)
    v.theorem = "REF15";
  else
    v.theorem = "T4.2";

  if (v.simple) {
    v.certificates.push_back(cond);
    return v;
  }
  using detail::xy_uni;
  using detail::xy_var;
  const MultiPoly y = xy_var("y");
  if (!cond.a0_unit) {
    if (f.a0.is_zero())
      v.certificates.push_back(StableIdeal{{y}});
    else
      v.certificates.push_back(StableIdeal{{y, xy_uni(f.a0)}});
  } else if (!ls.empty()) {
    v.certificates.push_back(StableIdeal{{detail::shifted_y(ls.front())}});
    v.certificates.push_back(LValue{ls.front()});
  } else {
    const Rat a0 = f.a0.coeff(0);
    if (!f.a2.is_zero()) {
      const Rat a2 = f.a2.coeff(0);
      v.certificates.push_back(StableIdeal{
          {y * y + y * xy_uni(f.a1.scaled(Rat(1 / a2))) + MultiPoly::constant(Rat(a0 / a2), y.vars())}});
    } else if (!f.a1.is_zero()) {
      v.certificates.push_back(
          StableIdeal{{y + MultiPoly::constant(Rat(a0 / f.a1.coeff(0)), y.vars())}});
    } else {
      v.certificates.push_back(StableIdeal{{y * y * Rat(1, 2) - xy_var("x") * a0}});
    }
  }
  v.certificates.push_back(cond);
  return v;
}

/// Checks D(I) in I for I = (g) or I = (y, p(x)). Other generator shapes
/// throw UnsupportedIdealShape.
inline bool verify_stable_ideal(const Derivation& d, const std::vector<MultiPoly>& generators) {
  if (generators.size() == 1) {
    const MultiPoly g = generators.front().over(d.vars());
    if (g.is_constant()) throw UnsupportedIdealShape("principal generator must be non-constant");
    return divexact(d.apply(g), g).has_value();
  }
  if (generators.size() == 2) {
    auto xi = d.var_index("x");
    auto yi = d.var_index("y");
    if (!xi || !yi || d.vars().size() != 2)
      throw UnsupportedIdealShape("pair ideals are supported over K[x, y] only");
    const MultiPoly y = d.variable("y");
    const MultiPoly p = generators[1].over(d.vars());
    if (!(generators[0].over(d.vars()) == y) || p.uses_var(*yi) || p.is_constant())
      throw UnsupportedIdealShape("pair ideals must have the form (y, p(x)) with p non-constant");
    const UniPoly pu = p.to_uni(*xi);
    auto reduces = [&](const MultiPoly& h) {
      return divmod(h.substitute(*yi, Rat(0)).to_uni(*xi), pu).second.is_zero();
    };
    return reduces(d.apply(y)) && reduces(d.apply(p));
  }
  throw UnsupportedIdealShape("only principal ideals and pairs (y, p(x)) are supported");
}

struct NecessaryPass {};

struct NecessaryFail {
  ConditionRecord conditions;
  StableIdeal witness;
  std::optional<Rat> l;
};

using NecessaryResult = std::variant<NecessaryPass, NecessaryFail>;

/// Necessary conditions for simplicity of
/// y^alpha d/dx + (a2 y^(beta+1) + a1 y^beta + a0) d/dy, alpha <= beta.
/// On failure returns a stable ideal showing non-simplicity.
inline NecessaryResult conjecture_necessary(const FamilyConj& f) {
  if (f.alpha < 1 || f.beta < f.alpha) throw std::invalid_argument("need 1 <= alpha <= beta");
  ConditionRecord cond;
  cond.a0_unit = f.a0.deg() == 0;
  cond.degree_condition = f.a1.deg() >= 1 || f.a2.deg() >= 1;
  std::vector<Rat> ls;
  if (cond.a0_unit) {
    ls = solve_l_condition(f.a2, f.a1, f.a0.coeff(0), f.beta);
    cond.no_l = ls.empty();
  }
  if (cond.a0_unit && cond.degree_condition && *cond.no_l) return NecessaryPass{};

  using detail::xy_uni;
  using detail::xy_var;
  const MultiPoly y = xy_var("y");
  NecessaryFail out{cond, {}, std::nullopt};
  if (!cond.a0_unit) {
    out.witness = f.a0.is_zero() ? StableIdeal{{y}} : StableIdeal{{y, xy_uni(f.a0)}};
  } else if (!ls.empty()) {
    out.witness = StableIdeal{{detail::shifted_y(ls.front())}};
    out.l = ls.front();
  } else if (!f.a2.is_zero() || !f.a1.is_zero()) {
    out.witness = StableIdeal{{y.pow(f.beta + 1) * xy_uni(f.a2) + y.pow(f.beta) * xy_uni(f.a1) +
                               xy_uni(f.a0)}};
  } else {
    out.witness = StableIdeal{
        {y.pow(f.alpha + 1) * Rat(Rat(1) / (f.alpha + 1)) - xy_var("x") * f.a0.coeff(0)}};
  }
  return out;
}

struct ScanCell {
  UniPoly a2, a1, a0;
};

struct ScanRow {
  unsigned alpha = 0;
  ScanCell cell;
  bool necessary = false;
  std::optional<NecessaryFail> failure;
  bool witness_verified = false;
  /// "found", "none-up-to-bounds", "undecided", "not-searched" (deg a2 < 1)
  /// or "skipped" (necessary conditions fail).
  std::string darboux_status;
  std::optional<SearchOutcome> search;
  SearchBounds bounds;
};

/// Evidence for alpha = beta >= 2: necessary conditions, and for passing
/// cells a bounded Darboux search. Rows follow grid order. A passing cell
/// with no Darboux polynomial found is evidence only, never a proof.
inline std::vector<ScanRow> conjecture_scan(unsigned alpha, const std::vector<ScanCell>& grid,
                                            const SearchBounds& bounds) {
  if (alpha < 2) throw std::invalid_argument("conjecture scan needs alpha >= 2");
  std::vector<ScanRow> rows;
  for (const auto& cell : grid) {
    ScanRow row;
    row.alpha = alpha;
    row.cell = cell;
    row.bounds = bounds;
    FamilyConj fam{alpha, alpha, cell.a2, cell.a1, cell.a0};
    auto nec = conjecture_necessary(fam);
    if (auto* fail = std::get_if<NecessaryFail>(&nec)) {
      row.failure = *fail;
      row.witness_verified = verify_stable_ideal(to_derivation(fam), fail->witness.generators);
      row.darboux_status = "skipped";
    } else {
      row.necessary = true;
      if (cell.a2.deg() < 1) {
        row.darboux_status = "not-searched";
      } else {
        row.search = darboux_search_conj(fam, bounds);
        static const char* names[] = {"found", "none-up-to-bounds", "undecided"};
        row.darboux_status = names[row.search->index()];
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace derivkit
