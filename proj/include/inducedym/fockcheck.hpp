#pragma once

#include "inducedym/numeric.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace inducedym {

// (U tensor 1_{N_b}) direct sum (conj(U) tensor 1_{N_b})
Eigen::MatrixXcd one_particle_matrix(const Eigen::MatrixXcd& u, int n_b);

// h_0..h_K from power sums p_1..p_K by Newton's identities n h_n = sum_k p_k h_{n-k}.
std::vector<std::complex<double>> complete_symmetric_from_power_sums(std::span<const std::complex<double>> p, int k_max);

// sum_{n <= K} alpha^n Tr Sym^n M(U)
std::complex<double> truncated_fock_trace(const Eigen::MatrixXcd& u, double alpha, int n_b, int k_max);

struct DetIdentityCheck {
  std::complex<double> trace;
  double determinant = 0.0;  // |Det(1 - alpha U)|^{-2 N_b}
  double relative_error = 0.0;
  double bound = 0.0;        // excluded-tail bound on the relative error
  double empirical_c = 0.0;  // relative_error / (alpha^{K+1} (K+1)^{2 N_b N_c})
};
DetIdentityCheck verify_det_identity(const Eigen::MatrixXcd& u, double alpha, int n_b, int k_max);

struct HilbertSeries {
  std::vector<std::int64_t> dims;
  double residual = 0.0;  // max distance of the quadrature values from the nearest integers
  int grid = 0;
};
constexpr int kMaxHilbertDegree = 2000;
// grid = 0 picks the smallest power of two that integrates every term exactly.
HilbertSeries singlet_hilbert_series(int n_c, int n_b, int degree, int grid = 0);
// sum_n dims_n alpha^n in extended precision
double hilbert_partial_sum(const HilbertSeries& series, double alpha);

}  // namespace inducedym
