#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "derivkit/rational.hpp"
#include "derivkit/unipoly.hpp"

namespace derivkit {

namespace detail {

inline BigInt pollard_rho(const BigInt& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    BigInt x = 2, y = 2, d = 1;
    auto step = [&](const BigInt& v) { return BigInt((v * v + c) % n); };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      BigInt diff = abs(BigInt(x - y));
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

inline void factor_into(BigInt n, std::map<BigInt, unsigned>& out) {
  if (n <= 1) return;
  for (unsigned long p = 2; p < 1000 && BigInt(p) * p <= n; ++p)
    while (n % p == 0) {
      ++out[BigInt(p)];
      n /= p;
    }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  BigInt d = pollard_rho(n);
  factor_into(d, out);
  factor_into(BigInt(n / d), out);
}

/// All positive divisors of n > 0.
inline std::vector<BigInt> divisors(const BigInt& n) {
  std::map<BigInt, unsigned> f;
  factor_into(n, f);
  std::vector<BigInt> ds{1};
  for (const auto& [p, e] : f) {
    std::size_t base = ds.size();
    BigInt pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

}  // namespace detail

/// Distinct rational roots in increasing order, via the rational-root
/// theorem on the primitive integer form. Throws std::domain_error on the
/// zero polynomial.
inline std::vector<Rat> rational_roots(const UniPoly& p) {
  if (p.is_zero()) throw std::domain_error("rational roots of the zero polynomial");
  std::vector<Rat> roots;
  const auto& terms = p.terms();
  if (terms.front().first > 0) roots.push_back(0);
  if (p.deg() == terms.front().first) return roots;  // c*x^k

  BigInt lcm = 1;
  for (const auto& t : terms) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.second.get_den_mpz_t());
  const std::uint32_t low = terms.front().first;
  std::vector<BigInt> ints;
  std::vector<std::uint32_t> exps;
  BigInt content = 0;
  for (const auto& [e, c] : terms) {
    BigInt v = c.get_num() * (lcm / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    ints.push_back(v);
    exps.push_back(e - low);
  }
  for (auto& v : ints) v /= content;

  const BigInt a0 = abs(ints.front());
  const BigInt an = abs(ints.back());
  const unsigned n = exps.back();

  // q^n * p(r/q) with integer arithmetic.
  auto vanishes = [&](const BigInt& num, const BigInt& den) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < ints.size(); ++i) {
      BigInt t = ints[i];
      for (unsigned k = 0; k < exps[i]; ++k) t *= num;
      for (unsigned k = exps[i]; k < n; ++k) t *= den;
      acc += t;
    }
    return acc == 0;
  };

  std::set<Rat> found;
  if (n == 1) {
    found.insert(make_rat(BigInt(-ints.front()), ints.back()));
  } else {
    auto num_divs = detail::divisors(a0);
    auto den_divs = detail::divisors(an);
    for (const auto& q : den_divs)
      for (const auto& r : num_divs) {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t());
        if (g != 1) continue;
        if (vanishes(r, q)) found.insert(make_rat(r, q));
        if (vanishes(BigInt(-r), q)) found.insert(make_rat(BigInt(-r), q));
      }
  }
  roots.insert(roots.end(), found.begin(), found.end());
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace derivkit
