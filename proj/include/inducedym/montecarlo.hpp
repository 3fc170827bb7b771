#pragma once

#include "inducedym/cellcomplex.hpp"
#include "inducedym/rng.hpp"
#include "inducedym/weights.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace inducedym {

using Matrix = Eigen::MatrixXcd;

struct LinkConfiguration {
  int n_c = 1;
  std::vector<Matrix> links;
  // U(-l) = U(l)^{-1}, applied on read
  Matrix get(const OrientedLink& step) const;
};

Matrix haar_sample(int n_c, Philox4x32& rng);
LinkConfiguration random_configuration(const CellComplex& complex, int n_c, Philox4x32& rng);

// Ordered product along a closed walk; the first step acts first (rightmost factor).
Matrix holonomy(const LinkConfiguration& config, std::span<const OrientedLink> walk);

// U(l) -> g(end) U(l) g(start)^{-1}
void gauge_transform(const CellComplex& complex, LinkConfiguration& config, const std::vector<Matrix>& g);
double unitarity_defect(const Matrix& u);
Matrix nearest_unitary(const Matrix& u);

// Induced action when beta is empty, Wilson action -(beta/N_c) Re Tr U otherwise.
struct McModel {
  ModelCouplings couplings;
  std::optional<double> beta;
  void validate() const;
};

// Action of one plaquette holonomy; +infinity for a zero fermion determinant.
double plaquette_action(const Matrix& u, const McModel& model);

struct McConfig {
  std::size_t measurements = 10000;
  std::size_t thermalization = 1000;  // sweeps
  std::size_t sweeps_per_measurement = 1;
  double epsilon = 0.5;
  bool autotune = true;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  bool keep_series = false;
  std::vector<Contour> contours;
  bool per_plaquette = true;
};

struct Observable {
  std::string name;
  double mean = 0.0;
  double error = 0.0;
  double tau_int = 0.5;
  std::vector<double> series;
};

struct McReport {
  std::vector<Observable> observables;
  double acceptance = 0.0;
  std::size_t chain_length = 0;
  std::uint64_t seed = 0;
  std::size_t thermalization = 0;
  double epsilon = 0.0;
  std::size_t singular_rejections = 0;
  std::size_t chains = 1;
  std::size_t link_updates = 0;    // proposals per link, largest over links
  double unitarity_defect = 0.0;   // worst |U^dag U - 1| in the final configuration
  const Observable& get(const std::string& name) const;
};

struct AutocorrEstimate {
  double mean = 0.0;
  double error = 0.0;
  double tau_int = 0.5;
  std::size_t window = 0;
};
// Sokal windowing: smallest W with W >= c * tau(W).
AutocorrEstimate integrated_autocorrelation(std::span<const double> series, double c = 5.0);

McReport mc_run(const CellComplex& complex, const McModel& model, const McConfig& config);
McReport wilson_loop_mc(const CellComplex& complex, const Contour& contour, const McModel& model, McConfig config);
// Independent chains on streams stream, stream+1, ...; merged by chain-length weighted mean.
McReport mc_run_chains(const CellComplex& complex, const McModel& model, const McConfig& config, int chains,
                       int threads);

// Cumulative distribution of the angle for the single-link weight |1 - a e^{i t}|^{-2}, t in (-pi, pi].
double u1_link_angle_cdf(double theta, double alpha);

}  // namespace inducedym
