#pragma once

#include "inducedym/numeric.hpp"
#include "inducedym/repn.hpp"

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace inducedym {

struct ModelCouplings {
  int n_c = 1;
  int n_b = 0;
  int n_f = 0;
  double alpha_b = 0.0;
  double alpha_f = 0.0;
  void validate() const;
};

enum class Engine { Determinant, Quadrature, Residue };
std::string engine_name(Engine e);

struct CharCoefficient {
  Signature lambda;
  double alpha = 0.0;  // bosonic coupling, the one the expansion is usually indexed by
  Real50 value;
  Engine engine = Engine::Determinant;
  double to_double() const { return value.convert_to<double>(); }
};

// m-th Fourier coefficient of |1 - a_f e^{it}|^{2 N_f} |1 - a_b e^{it}|^{-2 N_b}.
double fourier_coeff(int m, const ModelCouplings& couplings);
Real50 fourier_coeff_hp(int m, const ModelCouplings& couplings);

// Haar-normalized c_lambda by the 1D-Fourier determinant. Extended precision is used
// automatically when 1 - |alpha_b| < 1e-3, or always when extended = true.
CharCoefficient char_coefficient(const Signature& lambda, const ModelCouplings& couplings, bool extended = false);
// c_lambda / c_0 from the same row-scaled determinants.
double char_coefficient_ratio(const Signature& lambda, const ModelCouplings& couplings, bool extended = false);
// Ratios for many signatures at one coupling, sharing the Fourier coefficients.
std::vector<double> char_coefficient_ratios(std::span<const Signature> lambdas, const ModelCouplings& couplings);
Real50 char_coefficient_ratio_hp(const Signature& lambda, const ModelCouplings& couplings);

struct QuadratureValue {
  double value = 0.0;
  double aliasing = 0.0;  // |I(M) - I(M/2)|
};
// Weyl-measure trapezoid on an M^N_c grid; throws AliasingError if halving the grid
// changes the result by more than tol * max(1, |value|).
QuadratureValue char_coefficient_quadrature(const Signature& lambda, const ModelCouplings& couplings, int grid,
                                            double tol = 1e-8);

// <Tr U> in the one-plaquette model: c_fund / c_0.
double wilson_loop_one_plaquette(const ModelCouplings& couplings);

struct MomentReport {
  int n_b = 0;
  int n_c = 0;
  double trace_square = 0.0;   // -E[Tr X^2]
  double square_trace = 0.0;   // -E[(Tr X)^2]
  double b1 = 0.0;
  double b2 = 0.0;
  double trace_square_error = 0.0;
  double square_trace_error = 0.0;
};
MomentReport moments_B1B2(int n_b, int n_c, int nodes = 200);

struct SeriesValue {
  std::complex<double> value;
  double tail_bound = 0.0;
  std::size_t terms = 0;
};
// sum over Cas2 + r q^2 <= cutoff of exp(-t Cas2(lambda)) d chi_lambda(theta)
SeriesValue heat_kernel_weight(std::span<const double> theta, double t, double cutoff, double r = 0.0,
                               double tol = 1e-8);

}  // namespace inducedym
