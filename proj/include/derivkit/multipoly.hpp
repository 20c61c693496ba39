#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "derivkit/degree.hpp"
#include "derivkit/error.hpp"
#include "derivkit/rational.hpp"
#include "derivkit/unipoly.hpp"

namespace derivkit {

using Exponents = std::vector<std::uint32_t>;

inline std::uint32_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

/// Graded lexicographic order. Later variables are more significant,
/// so with variables (x, y) we get x < y and y^2 > x*y > x^2.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    auto da = total_degree(a);
    auto db = total_degree(b);
    if (da != db) return da < db;
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

/// Sparse polynomial with rational coefficients over a fixed, ordered
/// list of variable names.
///
/// Values with different variable lists only combine when one of them is
/// a constant; anything else throws VariableMismatch. A default-constructed
/// MultiPoly is the zero polynomial over no variables and therefore acts
/// as a neutral element for every list.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rat, GrlexLess>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  MultiPoly(std::vector<std::string> vars, TermMap terms)
      : vars_(std::move(vars)), terms_(std::move(terms)) {
    std::erase_if(terms_, [](const auto& kv) { return sgn(kv.second) == 0; });
    for (const auto& [e, c] : terms_)
      if (e.size() != vars_.size()) throw std::invalid_argument("exponent arity mismatch");
  }

  static MultiPoly constant(const Rat& c, std::vector<std::string> vars = {}) {
    MultiPoly p(std::move(vars));
    if (sgn(c) != 0) p.terms_.emplace(Exponents(p.vars_.size(), 0), c);
    return p;
  }

  static MultiPoly monomial(std::vector<std::string> vars, Exponents e, const Rat& c) {
    MultiPoly p(std::move(vars));
    if (e.size() != p.vars_.size()) throw std::invalid_argument("exponent arity mismatch");
    if (sgn(c) != 0) p.terms_.emplace(std::move(e), c);
    return p;
  }

  static MultiPoly variable(const std::vector<std::string>& vars, std::size_t index) {
    if (index >= vars.size()) throw std::out_of_range("variable index");
    Exponents e(vars.size(), 0);
    e[index] = 1;
    return monomial(vars, std::move(e), Rat(1));
  }

  static MultiPoly variable(const std::vector<std::string>& vars, const std::string& name) {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw VariableMismatch("unknown variable '" + name + "'");
    return variable(vars, static_cast<std::size_t>(it - vars.begin()));
  }

  /// Embeds a univariate polynomial as a polynomial in vars[index].
  static MultiPoly from_uni(const UniPoly& p, const std::vector<std::string>& vars,
                            std::size_t index = 0) {
    MultiPoly out(vars);
    for (const auto& [e, c] : p.terms()) {
      Exponents ex(vars.size(), 0);
      ex.at(index) = e;
      out.terms_.emplace(std::move(ex), c);
    }
    return out;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  std::optional<std::size_t> var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vars_.begin());
  }

  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && derivkit::total_degree(terms_.begin()->first) == 0);
  }

  Rat constant_term() const {
    if (terms_.empty()) return 0;
    const auto& [e, c] = *terms_.begin();
    return derivkit::total_degree(e) == 0 ? c : Rat(0);
  }

  Degree total_degree() const {
    if (terms_.empty()) return Degree::neg_inf();
    return Degree(derivkit::total_degree(terms_.rbegin()->first));
  }

  Degree degree_in(std::size_t var) const {
    Degree d;
    for (const auto& [e, c] : terms_) d = max(d, Degree(e.at(var)));
    return d;
  }

  bool uses_var(std::size_t var) const {
    for (const auto& [e, c] : terms_)
      if (e.at(var) != 0) return true;
    return false;
  }

  std::vector<std::size_t> used_vars() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < vars_.size(); ++v)
      if (uses_var(v)) out.push_back(v);
    return out;
  }

  /// Largest term in graded lexicographic order.
  const std::pair<const Exponents, Rat>& leading_term() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    return *terms_.rbegin();
  }

  void add_term(const Exponents& e, const Rat& c) {
    if (e.size() != vars_.size()) throw std::invalid_argument("exponent arity mismatch");
    if (sgn(c) == 0) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  MultiPoly partial(std::size_t var) const {
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
      if (e.at(var) == 0) continue;
      Exponents d = e;
      d[var] -= 1;
      out.terms_.emplace(std::move(d), c * e[var]);
    }
    return out;
  }

  MultiPoly substitute(std::size_t var, const Rat& value) const {
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
      Exponents r = e;
      r.at(var) = 0;
      Rat v = c;
      for (std::uint32_t k = 0; k < e[var]; ++k) v *= value;
      out.add_term(r, v);
    }
    return out;
  }

  /// Replaces vars[var] by a polynomial over the same variable list.
  MultiPoly substitute(std::size_t var, const MultiPoly& value) const {
    auto as = as_uni(var);
    MultiPoly v = value.over(vars_);
    MultiPoly acc(vars_);
    // Horner in powers of the substituted variable.
    std::uint32_t prev = as.terms().empty() ? 0 : as.terms().back().first;
    for (auto it = as.terms().rbegin(); it != as.terms().rend(); ++it) {
      for (std::uint32_t k = it->first; k < prev; ++k) acc = acc * v;
      acc = acc + it->second;
      prev = it->first;
    }
    for (std::uint32_t k = 0; k < prev; ++k) acc = acc * v;
    return acc;
  }

  /// Coefficient of vars[var]^e, as a polynomial free of that variable.
  MultiPoly coefficient_of(std::size_t var, std::uint32_t e) const {
    MultiPoly out(vars_);
    for (const auto& [ex, c] : terms_) {
      if (ex.at(var) != e) continue;
      Exponents r = ex;
      r[var] = 0;
      out.terms_.emplace(std::move(r), c);
    }
    return out;
  }

  /// View as a univariate polynomial in vars[var] with coefficients free of it.
  SparseUni<MultiPoly> as_uni(std::size_t var) const {
    std::map<std::uint32_t, MultiPoly> parts;
    for (const auto& [ex, c] : terms_) {
      Exponents r = ex;
      r.at(var) = 0;
      auto [it, fresh] = parts.try_emplace(ex[var], vars_);
      it->second.terms_.emplace(std::move(r), c);
    }
    std::vector<SparseUni<MultiPoly>::Term> out;
    for (auto& [e, p] : parts) out.emplace_back(e, std::move(p));
    return SparseUni<MultiPoly>(std::move(out));
  }

  /// Converts to a UniPoly in vars[var]; throws if another variable occurs.
  UniPoly to_uni(std::size_t var) const {
    std::vector<UniPoly::Term> out;
    for (const auto& [ex, c] : terms_) {
      for (std::size_t v = 0; v < ex.size(); ++v)
        if (v != var && ex[v] != 0)
          throw UnsupportedShape("polynomial is not univariate in '" + vars_.at(var) + "'");
      out.emplace_back(var < ex.size() ? ex[var] : 0, c);
    }
    return UniPoly(std::move(out));
  }

  /// Re-expresses the polynomial over new_vars, which must contain every
  /// variable that actually occurs.
  MultiPoly over(const std::vector<std::string>& new_vars) const {
    if (new_vars == vars_) return *this;
    std::vector<std::size_t> where(vars_.size(), SIZE_MAX);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
      if (it != new_vars.end()) where[i] = static_cast<std::size_t>(it - new_vars.begin());
    }
    MultiPoly out(new_vars);
    for (const auto& [ex, c] : terms_) {
      Exponents r(new_vars.size(), 0);
      for (std::size_t i = 0; i < ex.size(); ++i) {
        if (ex[i] == 0) continue;
        if (where[i] == SIZE_MAX)
          throw VariableMismatch("variable '" + vars_[i] + "' is not in the target list");
        r[where[i]] = ex[i];
      }
      out.terms_.emplace(std::move(r), c);
    }
    return out;
  }

  Rat evaluate(const std::vector<Rat>& point) const {
    if (is_constant()) return constant_term();
    if (point.size() != vars_.size()) throw std::invalid_argument("point arity mismatch");
    Rat acc = 0;
    for (const auto& [ex, c] : terms_) {
      Rat t = c;
      for (std::size_t i = 0; i < ex.size(); ++i)
        for (std::uint32_t k = 0; k < ex[i]; ++k) t *= point[i];
      acc += t;
    }
    return acc;
  }

  MultiPoly pow(unsigned k) const {
    MultiPoly result = constant(Rat(1), vars_);
    MultiPoly base = *this;
    while (k) {
      if (k & 1u) result = result * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return result;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    auto [l, r] = unify(a, b);
    MultiPoly out = std::move(l);
    for (const auto& [e, c] : r.terms_) out.add_term(e, c);
    return out;
  }

  friend MultiPoly operator-(const MultiPoly& a) {
    MultiPoly out = a;
    for (auto& kv : out.terms_) kv.second = -kv.second;
    return out;
  }

  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    auto [l, r] = unify(a, b);
    MultiPoly out = std::move(l);
    for (const auto& [e, c] : r.terms_) out.add_term(e, -c);
    return out;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    auto [l, r] = unify(a, b);
    MultiPoly out(l.vars_);
    if (l.is_zero() || r.is_zero()) return out;
    Exponents sum(l.vars_.size());
    for (const auto& [ea, ca] : l.terms_)
      for (const auto& [eb, cb] : r.terms_) {
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ea[i] + eb[i];
        out.add_term(sum, ca * cb);
      }
    return out;
  }

  friend MultiPoly operator*(const MultiPoly& a, const Rat& s) {
    MultiPoly out(a.vars_);
    if (sgn(s) == 0) return out;
    out.terms_ = a.terms_;
    for (auto& kv : out.terms_) kv.second *= s;
    return out;
  }

  friend MultiPoly operator*(const Rat& s, const MultiPoly& a) { return a * s; }

  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    if (a.is_constant() && b.is_constant()) return a.constant_term() == b.constant_term();
    return false;
  }

 private:
  static std::pair<MultiPoly, MultiPoly> unify(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ == b.vars_) return {a, b};
    if (a.is_constant()) return {constant(a.constant_term(), b.vars_), b};
    if (b.is_constant()) return {a, constant(b.constant_term(), a.vars_)};
    throw VariableMismatch("operands are over different variable lists");
  }

  std::vector<std::string> vars_;
  TermMap terms_;
};

inline bool is_zero(const MultiPoly& p) { return p.is_zero(); }

/// Exact quotient h/g, or nullopt when g does not divide h.
/// Throws std::domain_error when g is zero.
inline std::optional<MultiPoly> divexact(const MultiPoly& h, const MultiPoly& g) {
  if (g.is_zero()) throw std::domain_error("exact division by the zero polynomial");
  const auto& vars = h.nvars() >= g.nvars() ? h.vars() : g.vars();
  MultiPoly r = h.over(vars);
  MultiPoly d = g.over(vars);
  MultiPoly q(vars);
  const auto [lg, cg] = d.leading_term();
  Exponents shift(vars.size());
  while (!r.is_zero()) {
    const auto& [lr, cr] = r.leading_term();
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (lr[i] < lg[i]) return std::nullopt;
      shift[i] = lr[i] - lg[i];
    }
    MultiPoly t = MultiPoly::monomial(vars, shift, Rat(cr / cg));
    q += t;
    r -= t * d;
  }
  return q;
}

/// Canonical text form: terms in descending graded-lex order, variables in
/// list order, e.g. "x*y^2 - y^2 + x*y + 1".
inline std::string to_string(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    Rat mag = abs(c);
    if (first)
      out += sgn(c) < 0 ? "-" : "";
    else
      out += sgn(c) < 0 ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += p.vars()[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      out += to_string(mag);
    else if (mag == 1)
      out += mono;
    else
      out += to_string(mag) + "*" + mono;
  }
  return out;
}

/// Parametric univariate polynomial: a polynomial in x whose coefficients
/// are polynomials in parameter variables.
using ParamPoly = SparseUni<MultiPoly>;

/// Lifts a rational polynomial to constant parameter coefficients.
inline ParamPoly lift(const UniPoly& p, const std::vector<std::string>& params) {
  return p.map([&](const Rat& c) { return MultiPoly::constant(c, params); });
}

/// Specializes all parameters to the given point.
inline UniPoly specialize(const ParamPoly& p, const std::vector<Rat>& point) {
  return p.map([&](const MultiPoly& c) { return c.evaluate(point); });
}

}  // namespace derivkit
