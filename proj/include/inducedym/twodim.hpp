#pragma once

#include "inducedym/repn.hpp"
#include "inducedym/weights.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <string>

namespace inducedym {

enum class CasimirKind { Quadratic, Cauchy };
CasimirKind parse_casimir_kind(const std::string& text);
std::string casimir_kind_name(CasimirKind kind);

struct ContinuumParams {
  int n_c = 1;
  double mu = 1.0;
  double r = 0.0;  // weight of q^2 relative to Cas2
  int genus = 0;
  CasimirKind kind = CasimirKind::Quadratic;
  double max_casimir = std::numeric_limits<double>::infinity();
  int max_abs = 4;
  double tail_tol = 1e-8;
  void validate() const;
};

// Exponent of the damping factor: (Cas2 + r q^2)/2 or Cas1.
double casimir_energy(const Signature& lambda, CasimirKind kind, double r);

struct DiskValue {
  std::complex<double> value;
  double tail_bound = 0.0;
  std::size_t terms = 0;
};
struct PartitionValue {
  double value = 0.0;
  double tail_bound = 0.0;
  std::size_t terms = 0;
};

DiskValue gamma_disk(std::span<const double> theta, const ContinuumParams& params);
PartitionValue z_genus(const ContinuumParams& params);

struct GlueResult {
  double sphere_glued = 0.0;
  double sphere_direct = 0.0;
  double torus_glued = 0.0;
  double torus_direct = 0.0;
  double torus_numeric = std::numeric_limits<double>::quiet_NaN();  // literal double integral, N_c = 1 only
  double aliasing = 0.0;
};
// Sphere from two disks of areas mu_plus and mu_minus; torus of area mu_plus + mu_minus.
GlueResult glue_check(double mu_plus, double mu_minus, const ContinuumParams& params, int grid = 32);

// Sum over lambda of d^{2-2g} prod_p c_lambda(alpha_p) / (d c_0(alpha_p)).
PartitionValue lattice_partition_closed_surface(int genus, std::span<const double> alphas,
                                                const ModelCouplings& couplings, int max_abs,
                                                double tail_tol = 1e-8);

double alpha_from_area_quadratic(double area, double b2);
double alpha_from_area_cauchy(double area);

// Haar average over U(2) by Gauss-Legendre in |b|^2 and trapezoid rules in the phases.
std::complex<double> u2_average(const std::function<std::complex<double>(const Eigen::Matrix2cd&)>& f,
                                int t_nodes = 12, int phase_grid = 16);
// Haar average over U(1), trapezoid rule.
std::complex<double> u1_average(const std::function<std::complex<double>(std::complex<double>)>& f, int grid = 64);
std::complex<double> character_of_matrix(const Signature& lambda, const Eigen::MatrixXcd& u);

}  // namespace inducedym
