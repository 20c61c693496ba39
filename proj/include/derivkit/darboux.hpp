#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "derivkit/derivation.hpp"
#include "derivkit/families.hpp"
#include "derivkit/first_order.hpp"
#include "derivkit/residual.hpp"

namespace derivkit {

/// F with D(F) = cofactor * F.
struct DarbouxPair {
  MultiPoly F;
  MultiPoly cofactor;
};

struct NotDarboux {};

using DarbouxCheck = std::variant<DarbouxPair, NotDarboux>;

/// Returns the pair (F, D(F)/F) when F is non-constant and divides D(F).
/// Throws std::domain_error for F = 0.
inline DarbouxCheck verify_darboux(const Derivation& d, const MultiPoly& f) {
  if (f.is_zero()) throw std::domain_error("zero is not a Darboux candidate");
  if (f.is_constant()) return NotDarboux{};
  MultiPoly F = f.over(d.vars());
  auto q = divexact(d.apply(F), F);
  if (!q) return NotDarboux{};
  return DarbouxPair{F, *q};
}

/// Decomposition F = sum c_i(x) y^i, cofactor = d1(x) y + d0(x) for
/// family A, with the outcome of the structural checks.
struct CofactorStructure {
  unsigned n = 0;
  UniPoly d1, d0;
  std::vector<UniPoly> c;
  /// "lemma" when deg a2 >= 1, a0 is a nonzero constant and a1 != 0;
  /// "a1-zero" for the same hypotheses with a1 = 0, where the identical
  /// recurrences still apply; "outside" otherwise (only the decomposition
  /// is asserted).
  std::string coverage;
  std::optional<std::string> hypothesis_mismatch;
};

struct ViolationReport {
  std::string check;
  std::string detail;
};

using AuditResult = std::variant<CofactorStructure, ViolationReport>;

namespace detail {

inline std::string describe_mismatch(const UniPoly& lhs, const UniPoly& rhs) {
  return to_string(lhs) + " != " + to_string(rhs);
}

}  // namespace detail

/// Audits a Darboux pair of a family-A derivation against the cofactor
/// structure: deg_y of the cofactor at most 1, d1 = n*a2, constant leading
/// coefficient c_n, and the three coefficient recurrences
///   c_{n-1}' = a2 c_{n-1} + (d0 - n a1) c_n,
///   (i+1) a0 c_{i+1} = (n-i+1) a2 c_{i-1} + (d0 - i a1) c_i - c_{i-1}'  (1 <= i <= n-1),
///   a0 c_1 = d0 c_0.
inline AuditResult audit_structure(const FamilyA& fam, const DarbouxPair& pair) {
  const Derivation d = to_derivation(fam);
  const MultiPoly F = pair.F.over(d.vars());
  const MultiPoly L = pair.cofactor.over(d.vars());

  auto lhs = detail::split_by_y(d.apply(F), 0, 1);
  auto rhs = detail::split_by_y(L * F, 0, 1);
  std::set<std::uint32_t> ys;
  for (const auto& [j, c] : lhs) ys.insert(j);
  for (const auto& [j, c] : rhs) ys.insert(j);
  for (auto j : ys) {
    if (!(detail::at(lhs, j) == detail::at(rhs, j)))
      return ViolationReport{"D(F) = cofactor*F",
                             "coefficients of y^" + std::to_string(j) + " differ: " +
                                 detail::describe_mismatch(detail::at(lhs, j), detail::at(rhs, j))};
  }

  auto cf = detail::split_by_y(F, 0, 1);
  auto lam = detail::split_by_y(L, 0, 1);
  if (!lam.empty() && lam.rbegin()->first > 1)
    return ViolationReport{"deg_y cofactor <= 1",
                           "cofactor has y-degree " + std::to_string(lam.rbegin()->first)};

  CofactorStructure s;
  s.n = cf.rbegin()->first;
  s.d1 = detail::at(lam, 1);
  s.d0 = detail::at(lam, 0);
  for (std::uint32_t i = 0; i <= s.n; ++i) s.c.push_back(detail::at(cf, i));

  const bool base = fam.a2.deg() >= 1 && fam.a0.deg() == 0;
  if (!base) {
    s.coverage = "outside";
    s.hypothesis_mismatch = "structure checks need deg a2 >= 1 and a0 a nonzero constant";
    return s;
  }
  s.coverage = fam.a1.is_zero() ? "a1-zero" : "lemma";

  const Rat n(s.n);
  if (!(s.d1 == fam.a2.scaled(n)))
    return ViolationReport{"d1 = n*a2", detail::describe_mismatch(s.d1, fam.a2.scaled(n))};
  if (!(s.c[s.n].deg() == 0))
    return ViolationReport{"c_n constant", "c_n = " + to_string(s.c[s.n])};

  const auto& c = s.c;
  const Rat a0 = fam.a0.coeff(0);
  auto cn = [&](std::int64_t i) { return i < 0 || i > static_cast<std::int64_t>(s.n) ? UniPoly{} : c[i]; };

  // Leading recurrence.
  {
    UniPoly l = cn(static_cast<std::int64_t>(s.n) - 1).derivative();
    UniPoly r = fam.a2 * cn(static_cast<std::int64_t>(s.n) - 1) + (s.d0 - fam.a1.scaled(n)) * cn(s.n);
    if (!(l == r)) return ViolationReport{"leading recurrence", detail::describe_mismatch(l, r)};
  }
  for (std::int64_t i = static_cast<std::int64_t>(s.n) - 1; i >= 1; --i) {
    UniPoly l = cn(i + 1).scaled(Rat((i + 1)) * a0);
    UniPoly r = (fam.a2 * cn(i - 1)).scaled(Rat(static_cast<long>(s.n) - i + 1)) +
                (s.d0 - fam.a1.scaled(Rat(i))) * cn(i) - cn(i - 1).derivative();
    if (!(l == r))
      return ViolationReport{"middle recurrence i=" + std::to_string(i), detail::describe_mismatch(l, r)};
  }
  {
    UniPoly l = cn(1).scaled(a0);
    UniPoly r = s.d0 * cn(0);
    if (!(l == r)) return ViolationReport{"constant recurrence", detail::describe_mismatch(l, r)};
  }
  return s;
}

struct SearchBounds {
  unsigned n_max = 3;
  unsigned d0_deg_max = 3;
  unsigned cx_deg_max = 4;
  unsigned residual_effort = 8;
};

struct DarbouxHit {
  unsigned n = 0;
  DarbouxPair pair;
  /// Cofactor coefficients of y^0 .. y^alpha.
  std::vector<UniPoly> lambda;
  /// Parameters left free by the residual solver (set to 0).
  std::vector<std::string> free_params;
};

struct Found {
  std::vector<DarbouxHit> hits;
  /// y-degrees whose residual system could not be decided.
  std::vector<std::string> undecided;
};

struct NoneUpToBounds {};

struct UndecidedResidual {
  std::string description;
};

using SearchOutcome = std::variant<Found, NoneUpToBounds, UndecidedResidual>;

namespace detail {

inline ParamPoly truncate_into(const ParamPoly& p, unsigned max_deg, std::vector<MultiPoly>& constraints) {
  std::vector<ParamPoly::Term> kept;
  for (const auto& [e, c] : p.terms()) {
    if (e <= max_deg)
      kept.emplace_back(e, c);
    else
      constraints.push_back(c);
  }
  return ParamPoly(std::move(kept));
}

inline void push_coefficients(const ParamPoly& p, std::vector<MultiPoly>& constraints) {
  for (const auto& [e, c] : p.terms()) constraints.push_back(c);
}

inline MultiPoly xy_from(const std::vector<UniPoly>& by_y) {
  std::map<std::uint32_t, UniPoly> m;
  for (std::size_t j = 0; j < by_y.size(); ++j) m.emplace(static_cast<std::uint32_t>(j), by_y[j]);
  return xy_poly(m);
}

}  // namespace detail

/// Bounded search for Darboux polynomials of
/// y^a d/dx + (a2 y^(a+1) + a1 y^a + a0) d/dy with deg a2 >= 1.
///
/// A Darboux polynomial F = sum c_i y^i of y-degree n has cofactor
/// n*a2*y^a + sum_{s<a} lambda_s(x) y^s and constant c_n, normalized to 1.
/// Comparing coefficients of y^(m+a) gives, for m = n-1 down to 0,
///   (n-m) a2 c_m - c_m' = (m+1) a1 c_{m+1} + (m+a+1) a0 c_{m+a+1}
///                          - sum_{s<a} lambda_s c_{m+a-s},
/// a first-order equation with a unique polynomial solution candidate.
/// The coefficients of y^0 .. y^(a-1) give the closing conditions
///   (t+1) a0 c_{t+1} = sum_{s<=t} lambda_s c_{t-s}.
/// The lambda_s carry unknown coefficients; every leftover condition is a
/// polynomial equation in them, solved by solve_residual_system. Each
/// candidate is re-verified with verify_darboux.
inline SearchOutcome darboux_search_conj(const FamilyConj& fam, const SearchBounds& bounds) {
  if (fam.alpha != fam.beta) throw UnsupportedShape("Darboux search needs alpha = beta");
  if (fam.a2.deg() < 1) throw UnsupportedShape("Darboux search needs deg a2 >= 1");
  const Derivation d = to_derivation(fam);
  const unsigned alpha = fam.alpha;
  const unsigned e = bounds.d0_deg_max;

  Found found;
  for (unsigned n = 1; n <= bounds.n_max; ++n) {
    std::vector<std::string> params;
    for (unsigned s = 0; s < alpha; ++s)
      for (unsigned j = 0; j <= e; ++j)
        params.push_back(alpha == 1 ? "u" + std::to_string(j)
                                    : "u" + std::to_string(s) + "_" + std::to_string(j));
    auto one = MultiPoly::constant(1, params);
    std::vector<ParamPoly> lambda;
    for (unsigned s = 0; s < alpha; ++s) {
      std::vector<ParamPoly::Term> t;
      for (unsigned j = 0; j <= e; ++j) t.emplace_back(j, MultiPoly::variable(params, s * (e + 1) + j));
      lambda.emplace_back(std::move(t));
    }
    const ParamPoly A2 = lift(fam.a2, params), A1 = lift(fam.a1, params), A0 = lift(fam.a0, params);

    std::vector<ParamPoly> c(n + 1);
    c[n] = ParamPoly::constant(one);
    std::vector<MultiPoly> constraints;
    bool impossible = false;
    for (int m = static_cast<int>(n) - 1; m >= 0 && !impossible; --m) {
      ParamPoly rhs = (A1 * c[m + 1]).scaled(Rat(m + 1));
      if (m + alpha + 1 <= n) rhs += (A0 * c[m + alpha + 1]).scaled(Rat(m + alpha + 1));
      for (unsigned s = 0; s < alpha; ++s)
        if (m + alpha - s <= n) rhs -= lambda[s] * c[m + alpha - s];
      auto r = solve_first_order(Rat(n - m), fam.a2, rhs, FirstOrderMode::ScaledMinusDerivative);
      if (std::holds_alternative<NoSolutionShape>(r)) {
        impossible = true;
        break;
      }
      auto& sol = std::get<FirstOrderSolution>(r);
      constraints.insert(constraints.end(), sol.constraints.begin(), sol.constraints.end());
      c[m] = detail::truncate_into(sol.c, bounds.cx_deg_max, constraints);
    }
    if (impossible) continue;
    for (unsigned t = 0; t < alpha; ++t) {
      ParamPoly eq;
      if (t + 1 <= n) eq += (A0 * c[t + 1]).scaled(Rat(t + 1));
      for (unsigned s = 0; s <= t; ++s) eq -= lambda[s] * c[t - s];
      detail::push_coefficients(eq, constraints);
    }

    auto res = solve_residual_system(constraints, params, bounds.residual_effort);
    if (auto* u = std::get_if<ResidualUndecided>(&res)) {
      found.undecided.push_back("n=" + std::to_string(n) + ": " + u->reason);
      continue;
    }
    for (const auto& pt : std::get<ResidualSolutions>(res).points) {
      std::vector<UniPoly> cs;
      for (const auto& ci : c) cs.push_back(specialize(ci, pt.values));
      std::vector<UniPoly> lam;
      for (const auto& l : lambda) lam.push_back(specialize(l, pt.values));
      lam.resize(alpha + 1);
      lam[alpha] = fam.a2.scaled(Rat(n));
      MultiPoly F = detail::xy_from(cs);
      MultiPoly L = detail::xy_from(lam);
      auto check = verify_darboux(d, F);
      auto* pair = std::get_if<DarbouxPair>(&check);
      if (!pair || !(pair->cofactor == L))
        throw std::logic_error("search produced a candidate that fails verification: " + to_string(F));
      DarbouxHit hit{n, *pair, lam, {}};
      for (auto v : pt.free) hit.free_params.push_back(params[v]);
      found.hits.push_back(std::move(hit));
    }
  }
  if (!found.hits.empty()) return found;
  if (!found.undecided.empty()) {
    std::string all;
    for (const auto& u : found.undecided) all += (all.empty() ? "" : "; ") + u;
    return UndecidedResidual{all};
  }
  return NoneUpToBounds{};
}

/// Family-A search: the alpha = 1 case of darboux_search_conj.
/// Requires deg a2 >= 1 and a0 a nonzero constant.
inline SearchOutcome darboux_search_family_a(const FamilyA& fam, const SearchBounds& bounds) {
  if (fam.a0.deg() != 0) throw UnsupportedShape("Darboux search needs a0 a nonzero constant");
  return darboux_search_conj(FamilyConj{1, 1, fam.a2, fam.a1, fam.a0}, bounds);
}

}  // namespace derivkit
