#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "derivkit/degree.hpp"
#include "derivkit/rational.hpp"

namespace derivkit {

namespace detail {
template <class C>
bool coeff_is_zero(const C& c) {
  return is_zero(c);
}
}  // namespace detail

/// Sparse univariate polynomial over a coefficient ring C.
///
/// Terms are kept with strictly increasing exponents and no zero
/// coefficients. C must be default-constructible to its zero, support
/// + - * and unary -, multiplication by Rat, and have an ADL-visible
/// is_zero(const C&).
template <class C>
class SparseUni {
 public:
  using Coeff = C;
  using Term = std::pair<std::uint32_t, C>;

  SparseUni() = default;

  explicit SparseUni(std::vector<Term> terms) : terms_(std::move(terms)) {
    canonicalize();
  }

  static SparseUni constant(C c) { return monomial(std::move(c), 0); }

  static SparseUni monomial(C c, std::uint32_t e) {
    SparseUni p;
    if (!detail::coeff_is_zero(c)) p.terms_.emplace_back(e, std::move(c));
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Degree deg() const {
    return terms_.empty() ? Degree::neg_inf() : Degree(terms_.back().first);
  }

  /// deg <= 0, i.e. zero or a nonzero constant.
  bool is_constant() const { return deg() <= 0; }

  C coeff(std::uint32_t e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, std::uint32_t v) { return t.first < v; });
    if (it != terms_.end() && it->first == e) return it->second;
    return C{};
  }

  const C& leading_coeff() const {
    if (terms_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return terms_.back().second;
  }

  SparseUni derivative() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [e, c] : terms_)
      if (e > 0) out.emplace_back(e - 1, c * Rat(e));
    return SparseUni(std::move(out));
  }

  template <class S>
  SparseUni scaled(const S& s) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [e, c] : terms_) out.emplace_back(e, c * s);
    return SparseUni(std::move(out));
  }

  /// Multiplies by x^shift.
  SparseUni shifted(std::uint32_t shift) const {
    SparseUni p = *this;
    for (auto& t : p.terms_) t.first += shift;
    return p;
  }

  template <class F>
  auto map(F&& f) const {
    using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
    std::vector<typename SparseUni<D>::Term> out;
    out.reserve(terms_.size());
    for (const auto& [e, c] : terms_) out.emplace_back(e, f(c));
    return SparseUni<D>(std::move(out));
  }

  friend SparseUni operator+(const SparseUni& a, const SparseUni& b) {
    std::vector<Term> out;
    out.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        out.push_back(*i++);
      } else if (i == a.terms_.end() || j->first < i->first) {
        out.push_back(*j++);
      } else {
        C s = i->second + j->second;
        if (!detail::coeff_is_zero(s)) out.emplace_back(i->first, std::move(s));
        ++i;
        ++j;
      }
    }
    SparseUni r;
    r.terms_ = std::move(out);
    return r;
  }

  friend SparseUni operator-(const SparseUni& a) {
    SparseUni r = a;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend SparseUni operator-(const SparseUni& a, const SparseUni& b) { return a + (-b); }

  friend SparseUni operator*(const SparseUni& a, const SparseUni& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::map<std::uint32_t, C> acc;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        auto [it, fresh] = acc.try_emplace(ea + eb, ca * cb);
        if (!fresh) it->second = it->second + ca * cb;
      }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [e, c] : acc)
      if (!detail::coeff_is_zero(c)) out.emplace_back(e, std::move(c));
    SparseUni r;
    r.terms_ = std::move(out);
    return r;
  }

  SparseUni& operator+=(const SparseUni& o) { return *this = *this + o; }
  SparseUni& operator-=(const SparseUni& o) { return *this = *this - o; }
  SparseUni& operator*=(const SparseUni& o) { return *this = *this * o; }

  friend bool operator==(const SparseUni& a, const SparseUni& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k)
      if (a.terms_[k].first != b.terms_[k].first || !(a.terms_[k].second == b.terms_[k].second))
        return false;
    return true;
  }

 private:
  void canonicalize() {
    std::stable_sort(terms_.begin(), terms_.end(),
                     [](const Term& l, const Term& r) { return l.first < r.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second = out.back().second + t.second;
      else
        out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term& t) { return detail::coeff_is_zero(t.second); });
    terms_ = std::move(out);
  }

  std::vector<Term> terms_;
};

template <class C>
bool is_zero(const SparseUni<C>& p) {
  return p.is_zero();
}

/// Univariate polynomial in x with rational coefficients.
using UniPoly = SparseUni<Rat>;

/// Dense constructor: coefficients c0, c1, c2, ...
inline UniPoly uni_from_dense(std::initializer_list<Rat> coeffs) {
  std::vector<UniPoly::Term> t;
  std::uint32_t e = 0;
  for (const auto& c : coeffs) t.emplace_back(e++, c);
  return UniPoly(std::move(t));
}

inline UniPoly uni_x() { return UniPoly::monomial(Rat(1), 1); }
inline UniPoly uni_const(const Rat& c) { return UniPoly::constant(c); }

inline Rat evaluate(const UniPoly& p, const Rat& at) {
  Rat acc = 0;
  std::uint32_t prev = p.terms().empty() ? 0 : p.terms().back().first;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    for (std::uint32_t k = it->first; k < prev; ++k) acc *= at;
    acc += it->second;
    prev = it->first;
  }
  for (std::uint32_t k = 0; k < prev; ++k) acc *= at;
  return acc;
}

/// Antiderivative with zero constant term.
inline UniPoly antiderivative(const UniPoly& p) {
  std::vector<UniPoly::Term> out;
  for (const auto& [e, c] : p.terms()) out.emplace_back(e + 1, c / Rat(e + 1));
  return UniPoly(std::move(out));
}

/// Euclidean division a = q*b + r with deg r < deg b.
inline std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  UniPoly q;
  UniPoly r = a;
  const Rat& lb = b.leading_coeff();
  const long db = b.deg().value();
  while (!r.is_zero() && r.deg() >= db) {
    auto shift = static_cast<std::uint32_t>(r.deg().value() - db);
    Rat c = r.leading_coeff() / lb;
    UniPoly t = UniPoly::monomial(c, shift);
    q += t;
    r -= t * b;
  }
  return {q, r};
}

/// Monic gcd; gcd(0, 0) = 0.
inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  Rat lc = a.leading_coeff();
  return a.scaled(Rat(1 / lc));
}

inline std::string to_string(const UniPoly& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    Rat mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    first = false;
    bool unit = mag == 1;
    if (e == 0) {
      out += to_string(mag);
      continue;
    }
    if (!unit) out += to_string(mag) + "*";
    out += var;
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace derivkit
