#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "derivkit/derivation.hpp"
#include "derivkit/error.hpp"
#include "derivkit/multipoly.hpp"

namespace derivkit {

/// y d/dx + (a2(x) y^2 + a1(x) y + a0(x)) d/dy on K[x, y].
struct FamilyA {
  UniPoly a2, a1, a0;
  friend bool operator==(const FamilyA&, const FamilyA&) = default;
};

/// y d/dx + (a1(x) y + a0) d/dy with a0 a constant.
struct FamilyB {
  UniPoly a1;
  Rat a0;
  friend bool operator==(const FamilyB&, const FamilyB&) = default;
};

/// y^alpha d/dx + (a2 y^(beta+1) + a1 y^beta + a0) d/dy, 1 <= alpha <= beta.
struct FamilyConj {
  unsigned alpha = 1;
  unsigned beta = 1;
  UniPoly a2, a1, a0;
  friend bool operator==(const FamilyConj&, const FamilyConj&) = default;
};

struct DiagXComponent {
  UniPoly gamma;
  unsigned k = 1;
  friend bool operator==(const DiagXComponent&, const DiagXComponent&) = default;
};

/// d/dx + sum_i gamma_i(x) y_i^k_i d/dy_i on K[x, y_1..y_n], k_i >= 1.
struct FamilyDiagX {
  std::vector<DiagXComponent> comps;
  /// Names of the y variables; empty means y1..yn.
  std::vector<std::string> y_names;
  friend bool operator==(const FamilyDiagX&, const FamilyDiagX&) = default;
};

struct DiagComponent {
  Rat gamma;
  unsigned k = 0;
  friend bool operator==(const DiagComponent&, const DiagComponent&) = default;
};

/// sum_i gamma_i y_i^k_i d/dy_i on K[y_1..y_n], n >= 2, gamma_i nonzero.
struct FamilyDiag {
  std::vector<DiagComponent> comps;
  friend bool operator==(const FamilyDiag&, const FamilyDiag&) = default;
};

struct GenericFamily {
  friend bool operator==(const GenericFamily&, const GenericFamily&) = default;
};

using Family = std::variant<FamilyA, FamilyB, FamilyConj, FamilyDiagX, FamilyDiag, GenericFamily>;

inline std::string family_name(const Family& f) {
  static const char* names[] = {"A", "B", "Conj", "DiagX", "Diag", "Generic"};
  return names[f.index()];
}

inline std::vector<std::string> numbered_y(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("y" + std::to_string(i));
  return out;
}

namespace detail {

inline const std::vector<std::string>& xy_vars() {
  static const std::vector<std::string> v{"x", "y"};
  return v;
}

/// sum_j coeffs[j](x) * y^j over (x, y).
inline MultiPoly xy_poly(const std::map<std::uint32_t, UniPoly>& by_y_power) {
  MultiPoly out(xy_vars());
  for (const auto& [j, c] : by_y_power)
    for (const auto& [e, v] : c.terms()) out.add_term({e, j}, v);
  return out;
}

/// Splits a polynomial over (x, y) into x-coefficients of each y-power.
inline std::map<std::uint32_t, UniPoly> split_by_y(const MultiPoly& p, std::size_t x_index,
                                                   std::size_t y_index) {
  std::map<std::uint32_t, std::vector<UniPoly::Term>> parts;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t v = 0; v < e.size(); ++v)
      if (v != x_index && v != y_index && e[v] != 0)
        throw UnsupportedShape("unexpected variable in image");
    parts[e[y_index]].emplace_back(e[x_index], c);
  }
  std::map<std::uint32_t, UniPoly> out;
  for (auto& [j, t] : parts) out.emplace(j, UniPoly(std::move(t)));
  return out;
}

inline UniPoly at(const std::map<std::uint32_t, UniPoly>& m, std::uint32_t j) {
  auto it = m.find(j);
  return it == m.end() ? UniPoly{} : it->second;
}

}  // namespace detail

inline Derivation to_derivation(const FamilyConj& f) {
  if (f.alpha < 1 || f.beta < f.alpha) throw std::invalid_argument("need 1 <= alpha <= beta");
  MultiPoly dx = detail::xy_poly({{f.alpha, uni_const(1)}});
  MultiPoly dy = detail::xy_poly({{f.beta + 1, f.a2}}) + detail::xy_poly({{f.beta, f.a1}}) +
                 detail::xy_poly({{0, f.a0}});
  return Derivation(detail::xy_vars(), {dx, dy});
}

inline Derivation to_derivation(const FamilyA& f) {
  return to_derivation(FamilyConj{1, 1, f.a2, f.a1, f.a0});
}

inline Derivation to_derivation(const FamilyB& f) {
  return to_derivation(FamilyA{UniPoly{}, f.a1, uni_const(f.a0)});
}

inline std::vector<std::string> diagx_vars(const FamilyDiagX& f) {
  std::vector<std::string> vars{"x"};
  auto ys = f.y_names.empty() ? numbered_y(f.comps.size()) : f.y_names;
  if (ys.size() != f.comps.size()) throw std::invalid_argument("y name count mismatch");
  vars.insert(vars.end(), ys.begin(), ys.end());
  return vars;
}

inline Derivation to_derivation(const FamilyDiagX& f) {
  auto vars = diagx_vars(f);
  std::vector<MultiPoly> images{MultiPoly::constant(1, vars)};
  for (std::size_t i = 0; i < f.comps.size(); ++i) {
    if (f.comps[i].k < 1) throw std::invalid_argument("DiagX exponents must be >= 1");
    MultiPoly im(vars);
    for (const auto& [e, c] : f.comps[i].gamma.terms()) {
      Exponents ex(vars.size(), 0);
      ex[0] = e;
      ex[i + 1] = f.comps[i].k;
      im.add_term(ex, c);
    }
    images.push_back(std::move(im));
  }
  return Derivation(vars, images);
}

inline Derivation to_derivation(const FamilyDiag& f) {
  auto vars = numbered_y(f.comps.size());
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < f.comps.size(); ++i) {
    Exponents ex(vars.size(), 0);
    ex[i] = f.comps[i].k;
    images.push_back(MultiPoly::monomial(vars, ex, f.comps[i].gamma));
  }
  return Derivation(vars, images);
}

inline Derivation to_derivation(const Family& f) {
  return std::visit(
      [](const auto& fam) -> Derivation {
        if constexpr (std::is_same_v<std::decay_t<decltype(fam)>, GenericFamily>)
          throw UnsupportedFamily("a generic derivation has no family form");
        else
          return to_derivation(fam);
      },
      f);
}

namespace detail {

/// Image of y_i of the form gamma(x) * y_i^k (k >= 1), with gamma possibly 0.
inline std::optional<DiagXComponent> diagx_component(const MultiPoly& img, std::size_t y_index) {
  if (img.is_zero()) return DiagXComponent{UniPoly{}, 1};
  std::optional<std::uint32_t> k;
  std::vector<UniPoly::Term> gamma;
  for (const auto& [e, c] : img.terms()) {
    for (std::size_t v = 1; v < e.size(); ++v)
      if (v != y_index && e[v] != 0) return std::nullopt;
    if (k && *k != e[y_index]) return std::nullopt;
    k = e[y_index];
    gamma.emplace_back(e[0], c);
  }
  if (*k < 1) return std::nullopt;
  return DiagXComponent{UniPoly(std::move(gamma)), *k};
}

inline Family recognize_xy(const Derivation& d) {
  const MultiPoly& dx = d.image(0);
  const MultiPoly& dy = d.image(1);
  if (dx == MultiPoly::constant(1, d.vars())) {
    if (auto comp = diagx_component(dy, 1)) return FamilyDiagX{{*comp}, {"y"}};
    return GenericFamily{};
  }
  // D(x) must be exactly y^alpha.
  if (dx.size() != 1) return GenericFamily{};
  const auto& [ex, cx] = *dx.terms().begin();
  if (cx != 1 || ex[0] != 0 || ex[1] < 1) return GenericFamily{};
  const unsigned alpha = ex[1];

  auto parts = split_by_y(dy, 0, 1);
  std::set<std::uint32_t> support;
  for (const auto& [j, c] : parts) support.insert(j);
  auto fits = [&](unsigned beta) {
    for (auto j : support)
      if (j != 0 && j != beta && j != beta + 1) return false;
    return true;
  };
  std::optional<unsigned> beta;
  if (fits(alpha)) {
    beta = alpha;
  } else {
    for (auto j : support)
      if (j > 0)
        for (unsigned cand : {j - 1, j})
        if (cand >= alpha && fits(cand) && (!beta || cand < *beta)) beta = cand;
  }
  if (!beta) return GenericFamily{};
  UniPoly a2 = at(parts, *beta + 1), a1 = at(parts, *beta), a0 = at(parts, 0);
  if (alpha == 1 && *beta == 1) {
    if (a2.is_zero() && a0.is_constant()) return FamilyB{a1, a0.coeff(0)};
    return FamilyA{a2, a1, a0};
  }
  return FamilyConj{alpha, *beta, a2, a1, a0};
}

}  // namespace detail

/// Syntactic recognition of the derivation shapes above. The most specific
/// match wins: B before A, A before Conj with alpha = beta = 1.
inline Family recognize_family(const Derivation& d) {
  const auto& vars = d.vars();
  if (vars == detail::xy_vars()) return detail::recognize_xy(d);

  const std::size_t n = vars.size();
  if (n >= 2 && vars[0] == "x" &&
      std::vector<std::string>(vars.begin() + 1, vars.end()) == numbered_y(n - 1)) {
    if (!(d.image(0) == MultiPoly::constant(1, vars))) return GenericFamily{};
    FamilyDiagX f;
    for (std::size_t i = 1; i < n; ++i) {
      auto comp = detail::diagx_component(d.image(i), i);
      if (!comp) return GenericFamily{};
      f.comps.push_back(*comp);
    }
    f.y_names.assign(vars.begin() + 1, vars.end());
    return f;
  }

  if (n >= 2 && vars == numbered_y(n)) {
    FamilyDiag f;
    for (std::size_t i = 0; i < n; ++i) {
      const MultiPoly& im = d.image(i);
      if (im.size() != 1) return GenericFamily{};
      const auto& [e, c] = *im.terms().begin();
      for (std::size_t v = 0; v < n; ++v)
        if (v != i && e[v] != 0) return GenericFamily{};
      f.comps.push_back({c, e[i]});
    }
    return f;
  }
  return GenericFamily{};
}

/// Closed-form local finiteness for the families where it is known.
/// Throws UnsupportedFamily otherwise.
inline bool locally_finite_closed_form(const Family& fam) {
  if (const auto* f = std::get_if<FamilyDiagX>(&fam)) {
    for (const auto& c : f->comps)
      if (!c.gamma.is_zero() && !(c.k == 1 && c.gamma.is_constant())) return false;
    return true;
  }
  if (const auto* f = std::get_if<FamilyDiag>(&fam)) {
    for (const auto& c : f->comps)
      if (c.k > 1) return false;
    return true;
  }
  if (const auto* f = std::get_if<FamilyB>(&fam)) return f->a1.deg() <= 0;
  throw UnsupportedFamily("no closed-form local finiteness criterion for family " +
                          family_name(fam));
}

struct ProbeBounded {
  unsigned iterations = 0;
};

struct ProbeExceeded {
  std::string variable;
  unsigned iteration = 0;
  Degree degree;
};

using ProbeResult = std::variant<ProbeBounded, ProbeExceeded>;

/// Heuristic: iterates D on every variable and reports the first iterate
/// whose total degree passes cutoff_deg. A bounded answer is only evidence,
/// never a proof of local finiteness.
inline ProbeResult locally_finite_probe(const Derivation& d, unsigned cutoff_deg,
                                        unsigned max_iter) {
  if (d.max_image_degree() > static_cast<long>(cutoff_deg))
    throw std::invalid_argument("cutoff degree below the degree of the derivation");
  std::vector<MultiPoly> cur;
  for (std::size_t i = 0; i < d.vars().size(); ++i) cur.push_back(MultiPoly::variable(d.vars(), i));
  for (unsigned j = 1; j <= max_iter; ++j) {
    for (std::size_t i = 0; i < cur.size(); ++i) {
      cur[i] = d.apply(cur[i]);
      if (cur[i].total_degree() > static_cast<long>(cutoff_deg))
        return ProbeExceeded{d.vars()[i], j, cur[i].total_degree()};
    }
  }
  return ProbeBounded{max_iter};
}

}  // namespace derivkit
