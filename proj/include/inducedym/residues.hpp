#pragma once

#include "inducedym/numeric.hpp"
#include "inducedym/repn.hpp"

#include <optional>
#include <span>
#include <string>

namespace inducedym {

// A coupling given either as an exact rational or as a plain double.
struct CouplingValue {
  std::optional<Rational> exact;
  double value = 0.0;

  static CouplingValue parse(const std::string& text);  // "1/2", "0.25", "-1" are exact
  static CouplingValue from_double(double x);
  static CouplingValue from_rational(const Rational& q);
};

// Pure bosonic or pure fermionic weight for the exact engine.
struct ResidueCouplings {
  int n_c = 1;
  int n_b = 0;
  int n_f = 0;
  CouplingValue alpha_b;
  CouplingValue alpha_f;
  bool force_float = false;  // evaluate in floating point even when the couplings are exact
};

// Exact rational when all inputs were exact, otherwise a high-precision float.
struct ExactNumber {
  std::optional<Rational> exact;
  Real100 approx;
  bool is_exact() const { return exact.has_value(); }
  double to_double() const { return approx.convert_to<double>(); }
  std::string str() const;
};

// Which side of the unit circle each variable is closed on.
enum class ContourChoice { Auto, Inside, Outside };

// Unnormalized torus integral: value = coefficient * (2 pi)^{two_pi_power}.
struct TorusIntegral {
  ExactNumber coefficient;
  int two_pi_power = 0;
  double value() const;
};

// Float tier for the inexact mode: 50 (default) or 100 digits, from INDUCEDYM_PRECISION.
int float_precision_digits();

TorusIntegral torus_monomial_expectation(std::span<const int> exponents, const ResidueCouplings& couplings,
                                         ContourChoice choice = ContourChoice::Auto);

struct WilsonExact {
  ExactNumber value;
  std::string regime;
};
WilsonExact wilson_exact(const ResidueCouplings& couplings);

// Haar-normalized c_lambda, summing monomial integrals over the weights of chi_lambda(U^{-1}).
ExactNumber char_coefficient_oracle(const Signature& lambda, const ResidueCouplings& couplings);

}  // namespace inducedym
