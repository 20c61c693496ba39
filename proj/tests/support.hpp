#pragma once

#include <random>
#include <string>
#include <vector>

#include "derivkit/derivkit.hpp"

namespace derivkit::testing {

/// Deterministic generator for the property suites.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  bool coin() { return integer(0, 1) == 1; }

  Rat rat(int height = 10) {
    int num = integer(-height, height);
    int den = integer(1, height);
    return make_rat(num, den);
  }

  Rat nonzero_rat(int height = 10) {
    Rat r;
    do r = rat(height);
    while (sgn(r) == 0);
    return r;
  }

  UniPoly uni(int max_deg, int height = 10) {
    std::vector<UniPoly::Term> t;
    int d = integer(-1, max_deg);
    for (int e = 0; e <= d; ++e)
      if (coin() || e == d) t.emplace_back(static_cast<std::uint32_t>(e), rat(height));
    return UniPoly(std::move(t));
  }

  MultiPoly multi(const std::vector<std::string>& vars, int max_deg, int max_terms, int height = 10) {
    MultiPoly p(vars);
    int n = integer(0, max_terms);
    for (int i = 0; i < n; ++i) {
      Exponents e(vars.size(), 0);
      int left = integer(0, max_deg);
      for (std::size_t v = 0; v < vars.size() && left > 0; ++v) {
        int take = v + 1 == vars.size() ? left : integer(0, left);
        e[v] = static_cast<std::uint32_t>(take);
        left -= take;
      }
      // Spread the degree over the variables in random order.
      std::shuffle(e.begin(), e.end(), rng_);
      p += MultiPoly::monomial(vars, e, rat(height));
    }
    return p;
  }

  MultiPoly nonzero_multi(const std::vector<std::string>& vars, int max_deg, int max_terms) {
    MultiPoly p;
    do p = multi(vars, max_deg, max_terms);
    while (p.is_zero());
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline MultiPoly P(const char* src, const std::vector<std::string>& vars) { return parse_poly(src, vars); }

inline const std::vector<std::string>& XY() {
  static const std::vector<std::string> v{"x", "y"};
  return v;
}

/// Polynomial in x from dense coefficients.
inline UniPoly U(std::initializer_list<Rat> c) { return uni_from_dense(c); }

/// Rates and exponents of the DiagX grid: 15 single-component cells and
/// 15 two-component mixtures of them.
inline std::vector<FamilyDiagX> diagx_grid() {
  const std::vector<UniPoly> gammas{UniPoly{}, U({1}), U({2}), U({0, 1}), U({0, 0, 1})};
  std::vector<DiagXComponent> singles;
  for (const auto& g : gammas)
    for (unsigned k = 1; k <= 3; ++k) singles.push_back({g, k});
  std::vector<FamilyDiagX> out;
  for (const auto& c : singles) out.push_back({{c}, {}});
  for (std::size_t i = 0; i < singles.size(); ++i)
    out.push_back({{singles[i], singles[(7 * i + 3) % singles.size()]}, {}});
  return out;
}

/// n = 2 diagonal grid with rates in {1, 2, -1/2} and exponents 0..3.
inline std::vector<FamilyDiag> diag_grid() {
  const std::vector<Rat> gammas{Rat(1), Rat(2), make_rat(-1, 2)};
  std::vector<FamilyDiag> out;
  for (const auto& g1 : gammas)
    for (const auto& g2 : gammas)
      for (unsigned k1 = 0; k1 <= 3; ++k1)
        for (unsigned k2 = 0; k2 <= 3; ++k2) out.push_back({{{g1, k1}, {g2, k2}}});
  return out;
}

}  // namespace derivkit::testing
