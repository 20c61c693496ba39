#pragma once

#include <variant>
#include <vector>

#include "derivkit/error.hpp"
#include "derivkit/multipoly.hpp"
#include "derivkit/unipoly.hpp"

namespace derivkit {

enum class FirstOrderMode {
  DerivativeMinusScaled,  ///< c' - k*a*c = g
  ScaledMinusDerivative,  ///< k*a*c - c' = g
};

struct FirstOrderSolution {
  ParamPoly c;
  /// Polynomials in the parameters that must all vanish for c to solve
  /// the equation identically.
  std::vector<MultiPoly> constraints;
};

struct NoSolutionShape {};

using FirstOrderResult = std::variant<FirstOrderSolution, NoSolutionShape>;

/// Solves a first-order polynomial ODE with parametric right-hand side.
///
/// For deg a >= 1 the operator c -> k*a*c - c' is injective and raises
/// degrees by exactly deg a, so the only candidate has degree
/// deg g - deg a and its coefficients are fixed top-down. Coefficients of
/// the equation below x^(deg a) are not used by the matching and come
/// back as constraints. Returns NoSolutionShape when a constraint is a
/// nonzero constant, i.e. no parameter value can satisfy it.
inline FirstOrderResult solve_first_order(const Rat& k, const UniPoly& a, const ParamPoly& g,
                                          FirstOrderMode mode) {
  if (sgn(k) == 0) throw UnsupportedShape("first-order solve with k = 0");
  if (a.deg() < 1) throw UnsupportedShape("first-order solve needs deg a >= 1");

  ParamPoly rest = mode == FirstOrderMode::ScaledMinusDerivative ? g : -g;
  FirstOrderSolution out;
  if (rest.is_zero()) return out;

  const std::uint32_t da = static_cast<std::uint32_t>(a.deg().value());
  const Rat lead = k * a.leading_coeff();

  std::vector<ParamPoly::Term> c_terms;
  while (!rest.is_zero() && rest.deg() >= static_cast<long>(da)) {
    const std::uint32_t t = static_cast<std::uint32_t>(rest.deg().value());
    const std::uint32_t j = t - da;
    MultiPoly cj = rest.leading_coeff() * Rat(1 / lead);
    // L(cj * x^j) = k*a*cj*x^j - j*cj*x^(j-1)
    ParamPoly image = a.map([&](const Rat& ai) { return cj * Rat(k * ai); }).shifted(j);
    if (j > 0) image -= ParamPoly::monomial(cj * Rat(j), j - 1);
    rest -= image;
    c_terms.emplace_back(j, std::move(cj));
  }
  out.c = ParamPoly(std::move(c_terms));
  for (const auto& [e, coeff] : rest.terms()) {
    if (coeff.is_constant()) return NoSolutionShape{};
    out.constraints.push_back(coeff);
  }
  return out;
}

}  // namespace derivkit
