#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "derivkit/multipoly.hpp"
#include "derivkit/roots.hpp"

namespace derivkit {

/// One rational solution. Variables listed in `free` were unconstrained at
/// the point where they were fixed; they carry the representative value 0.
struct ResidualPoint {
  std::vector<Rat> values;
  std::vector<std::size_t> free;
  friend bool operator==(const ResidualPoint&, const ResidualPoint&) = default;
};

struct ResidualSolutions {
  std::vector<ResidualPoint> points;
};

struct ResidualUndecided {
  std::string reason;
};

using ResidualResult = std::variant<ResidualSolutions, ResidualUndecided>;

/// det of a square matrix over MultiPoly by fraction-free (Bareiss) elimination.
inline MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>> m,
                                     const std::vector<std::string>& vars) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly::constant(1, vars);
  MultiPoly prev = MultiPoly::constant(1, vars);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return MultiPoly(vars);
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        auto q = divexact(num, prev);
        if (!q) throw std::logic_error("Bareiss step not exact");
        m[i][j] = std::move(*q);
      }
      m[i][k] = MultiPoly(vars);
    }
    prev = m[k][k];
  }
  MultiPoly det = m[n - 1][n - 1];
  return negate ? -det : det;
}

/// Resultant of p and q with respect to variable `var`, via the Sylvester matrix.
inline MultiPoly resultant(const MultiPoly& p, const MultiPoly& q, std::size_t var) {
  const auto& vars = p.vars();
  auto P = p.as_uni(var);
  auto Q = q.over(vars).as_uni(var);
  if (P.is_zero() || Q.is_zero()) return MultiPoly(vars);
  const std::size_t dp = static_cast<std::size_t>(P.deg().value());
  const std::size_t dq = static_cast<std::size_t>(Q.deg().value());
  if (dp == 0 && dq == 0) return MultiPoly::constant(1, vars);
  const std::size_t n = dp + dq;
  std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n, MultiPoly(vars)));
  for (std::size_t r = 0; r < dq; ++r)
    for (std::size_t e = 0; e <= dp; ++e) m[r][r + dp - e] = P.coeff(static_cast<std::uint32_t>(e));
  for (std::size_t r = 0; r < dp; ++r)
    for (std::size_t e = 0; e <= dq; ++e) m[dq + r][r + dq - e] = Q.coeff(static_cast<std::uint32_t>(e));
  for (auto& row : m)
    for (auto& c : row) c = c.over(vars);
  return bareiss_determinant(std::move(m), vars);
}

namespace detail {

struct ResidualSolver {
  std::vector<std::string> vars;
  unsigned effort;
  std::optional<std::string> undecided;

  using Points = std::vector<ResidualPoint>;

  static std::vector<MultiPoly> cleaned(std::vector<MultiPoly> polys, bool& contradiction) {
    std::vector<MultiPoly> out;
    contradiction = false;
    for (auto& p : polys) {
      if (p.is_zero()) continue;
      if (p.is_constant()) {
        contradiction = true;
        return {};
      }
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
    }
    return out;
  }

  static std::vector<MultiPoly> substituted(const std::vector<MultiPoly>& polys, std::size_t v,
                                            const MultiPoly& value) {
    std::vector<MultiPoly> out;
    for (const auto& p : polys) out.push_back(p.uses_var(v) ? p.substitute(v, value) : p);
    return out;
  }

  MultiPoly constant(const Rat& c) const { return MultiPoly::constant(c, vars); }

  Points solve(std::vector<MultiPoly> polys, std::vector<bool> fixed) {
    if (undecided) return {};
    bool contradiction = false;
    polys = cleaned(std::move(polys), contradiction);
    if (contradiction) return {};

    if (polys.empty()) {
      ResidualPoint pt{std::vector<Rat>(vars.size()), {}};
      for (std::size_t v = 0; v < vars.size(); ++v)
        if (!fixed[v]) pt.free.push_back(v);
      return {pt};
    }

    // A variable with a constant coefficient, occurring linearly.
    for (std::size_t i = 0; i < polys.size(); ++i) {
      for (std::size_t v : polys[i].used_vars()) {
        if (polys[i].degree_in(v) != 1) continue;
        MultiPoly lead = polys[i].coefficient_of(v, 1);
        if (!lead.is_constant()) continue;
        MultiPoly expr = polys[i].coefficient_of(v, 0) * Rat(-1 / lead.constant_term());
        std::vector<MultiPoly> rest;
        for (std::size_t j = 0; j < polys.size(); ++j)
          if (j != i) rest.push_back(polys[j]);
        auto f = fixed;
        f[v] = true;
        Points pts = solve(substituted(rest, v, expr), f);
        for (auto& pt : pts) pt.values[v] = expr.evaluate(pt.values);
        return pts;
      }
    }

    // A polynomial divisible by a variable: split into v = 0 and the cofactor.
    for (std::size_t i = 0; i < polys.size(); ++i) {
      for (std::size_t v : polys[i].used_vars()) {
        std::uint32_t low = UINT32_MAX;
        for (const auto& [e, c] : polys[i].terms()) low = std::min(low, e[v]);
        if (low == 0) continue;
        Points out;
        {
          auto f = fixed;
          f[v] = true;
          Points pts = solve(substituted(polys, v, constant(0)), f);
          out.insert(out.end(), pts.begin(), pts.end());
        }
        {
          Exponents shift(vars.size(), 0);
          shift[v] = low;
          auto reduced = polys;
          reduced[i] = *divexact(polys[i], MultiPoly::monomial(vars, shift, 1));
          Points pts = solve(std::move(reduced), fixed);
          out.insert(out.end(), pts.begin(), pts.end());
        }
        return out;
      }
    }

    // A univariate polynomial: branch on its rational roots.
    for (std::size_t i = 0; i < polys.size(); ++i) {
      auto used = polys[i].used_vars();
      if (used.size() != 1) continue;
      const std::size_t v = used.front();
      UniPoly g = polys[i].to_uni(v);
      for (const auto& p : polys)
        if (p.used_vars() == used) g = gcd(g, p.to_uni(v));
      Points out;
      for (const Rat& r : rational_roots(g)) {
        auto f = fixed;
        f[v] = true;
        Points pts = solve(substituted(polys, v, constant(r)), f);
        for (auto& pt : pts) pt.values[v] = r;
        out.insert(out.end(), pts.begin(), pts.end());
      }
      return out;
    }

    return eliminate(std::move(polys), std::move(fixed));
  }

  Points eliminate(std::vector<MultiPoly> polys, std::vector<bool> fixed) {
    // Variable of smallest maximal degree among those shared by two polynomials.
    std::optional<std::size_t> best;
    long best_deg = 0;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      long users = 0, d = 0;
      for (const auto& p : polys)
        if (p.uses_var(v)) {
          ++users;
          d = std::max(d, p.degree_in(v).value());
        }
      if (users >= 2 && (!best || d < best_deg)) {
        best = v;
        best_deg = d;
      }
    }
    if (!best) {
      // Every variable occurs in a single polynomial: the system is
      // underdetermined in a way the free steps cannot resolve.
      undecided = "positive-dimensional component without rational parametrization";
      return {};
    }
    const std::size_t v = *best;
    std::vector<MultiPoly> with, without;
    for (auto& p : polys) (p.uses_var(v) ? with : without).push_back(p);
    std::sort(with.begin(), with.end(), [&](const MultiPoly& a, const MultiPoly& b) {
      return a.degree_in(v) < b.degree_in(v);
    });
    std::vector<MultiPoly> reduced = without;
    for (std::size_t j = 1; j < with.size(); ++j) {
      if (effort == 0) {
        undecided = "resultant elimination exceeded the effort budget";
        return {};
      }
      --effort;
      MultiPoly res = resultant(with.front(), with[j], v);
      if (res.is_zero()) {
        undecided = "vanishing resultant (common factor) in variable " + vars[v];
        return {};
      }
      reduced.push_back(std::move(res));
    }
    auto f = fixed;
    f[v] = true;
    Points partial = solve(std::move(reduced), f);
    if (undecided) return {};

    Points out;
    for (auto& pt : partial) {
      std::optional<UniPoly> g;
      for (const auto& p : with) {
        MultiPoly s = p;
        for (std::size_t u = 0; u < vars.size(); ++u)
          if (u != v && s.uses_var(u)) s = s.substitute(u, pt.values[u]);
        UniPoly su = s.to_uni(v);
        g = g ? gcd(*g, su) : su;
      }
      if (g->is_zero()) {
        pt.values[v] = 0;
        pt.free.push_back(v);
        std::sort(pt.free.begin(), pt.free.end());
        out.push_back(pt);
        continue;
      }
      auto roots = rational_roots(*g);
      if (roots.empty() && !pt.free.empty()) {
        undecided = "no root over a representative of a positive-dimensional projection";
        return {};
      }
      for (const Rat& r : roots) {
        ResidualPoint full = pt;
        full.values[v] = r;
        out.push_back(std::move(full));
      }
    }
    return out;
  }
};

}  // namespace detail

/// All rational solutions of a polynomial system, or Undecided.
///
/// Strategy, cheapest first: eliminate a variable occurring linearly with a
/// constant coefficient; split on a variable dividing a polynomial; branch
/// on rational roots of a univariate polynomial. Only when none applies are
/// resultants taken, each costing one unit of `effort`. Every returned point
/// is checked exactly against the input system.
inline ResidualResult solve_residual_system(const std::vector<MultiPoly>& system,
                                            const std::vector<std::string>& vars,
                                            unsigned effort) {
  std::vector<MultiPoly> polys;
  for (const auto& p : system) polys.push_back(p.over(vars));
  detail::ResidualSolver solver{vars, effort, std::nullopt};
  auto pts = solver.solve(polys, std::vector<bool>(vars.size(), false));
  if (solver.undecided) return ResidualUndecided{*solver.undecided};

  std::vector<ResidualPoint> out;
  for (auto& pt : pts) {
    bool ok = std::all_of(polys.begin(), polys.end(),
                          [&](const MultiPoly& p) { return sgn(p.evaluate(pt.values)) == 0; });
    if (!ok) throw std::logic_error("residual solver produced a non-solution");
    if (std::find(out.begin(), out.end(), pt) == out.end()) out.push_back(std::move(pt));
  }
  std::sort(out.begin(), out.end(), [](const ResidualPoint& a, const ResidualPoint& b) {
    return a.values < b.values;
  });
  return ResidualSolutions{std::move(out)};
}

/// Convenience overload taking the variable list from the first
/// non-constant polynomial.
inline ResidualResult solve_residual_system(const std::vector<MultiPoly>& system,
                                            unsigned effort) {
  std::vector<std::string> vars;
  for (const auto& p : system)
    if (p.nvars() > vars.size()) vars = p.vars();
  return solve_residual_system(system, vars, effort);
}

}  // namespace derivkit
