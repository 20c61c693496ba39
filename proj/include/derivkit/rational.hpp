#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace derivkit {

/// Exact rational scalar. gmpxx keeps results of arithmetic canonical
/// (reduced, positive denominator); explicit construction goes through
/// make_rat so that invariant holds everywhere.
using Rat = mpq_class;
using BigInt = mpz_class;

inline Rat make_rat(const BigInt& num, const BigInt& den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(long num, long den = 1) {
  return make_rat(BigInt(num), BigInt(den));
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

inline std::string to_string(const Rat& r) { return r.get_str(); }

/// Parses "[-]digits[/digits]". Throws std::invalid_argument on bad input.
inline Rat parse_rat(std::string_view s) {
  auto digits_ok = [](std::string_view d) {
    if (d.empty()) return false;
    for (char c : d)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view body = s;
  bool neg = false;
  if (!body.empty() && body.front() == '-') {
    neg = true;
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits_ok(num) || !digits_ok(den))
    throw std::invalid_argument("malformed rational: " + std::string(s));
  BigInt n(std::string(num), 10);
  BigInt d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
  if (neg) n = -n;
  return make_rat(n, d);
}

}  // namespace derivkit
