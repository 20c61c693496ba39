#pragma once

#include <compare>
#include <limits>
#include <stdexcept>
#include <string>

namespace derivkit {

/// Polynomial degree with deg(0) = -infinity ordered below every integer.
class Degree {
 public:
  constexpr Degree() = default;
  constexpr explicit Degree(long v) : v_(v) {}

  static constexpr Degree neg_inf() { return Degree(); }

  constexpr bool is_neg_inf() const { return v_ == kNegInf; }

  long value() const {
    if (is_neg_inf()) throw std::domain_error("degree of the zero polynomial");
    return v_;
  }

  friend constexpr auto operator<=>(const Degree&, const Degree&) = default;
  friend constexpr bool operator==(const Degree&, const Degree&) = default;

  friend constexpr auto operator<=>(const Degree& d, long v) { return d.v_ <=> v; }
  friend constexpr bool operator==(const Degree& d, long v) { return d.v_ == v; }

  friend constexpr Degree operator+(const Degree& a, const Degree& b) {
    if (a.is_neg_inf() || b.is_neg_inf()) return neg_inf();
    return Degree(a.v_ + b.v_);
  }

  std::string str() const { return is_neg_inf() ? "-inf" : std::to_string(v_); }

 private:
  static constexpr long kNegInf = std::numeric_limits<long>::min();
  long v_ = kNegInf;
};

inline Degree max(const Degree& a, const Degree& b) { return a < b ? b : a; }

}  // namespace derivkit
