#pragma once

#include "inducedym/cellcomplex.hpp"

#include <cstdint>
#include <vector>

namespace inducedym {

struct DualWeightConfig {
  std::vector<double> alpha;  // one per plaquette, in [0, 1)
  int n_max = 12;             // L1 cutoff on enumerated chains
  std::size_t node_budget = 50'000'000;

  static DualWeightConfig uniform(const CellComplex& complex, double alpha, int n_max);
  std::vector<double> log_weights() const;  // ln(1/alpha_p), +inf for alpha_p = 0
  void validate(const CellComplex& complex) const;
};

struct DualResult {
  double value = 0.0;
  double tail_bound = 0.0;
  std::size_t chain_count = 0;
};

// prod_p (1 - alpha_p^2)^{-1} times the sum over closed 2-chains of prod_p alpha_p^{|n_p|}.
DualResult dual_partition(const CellComplex& complex, const DualWeightConfig& config);
// Ratio of the sum over chains with boundary -C to the sum over closed chains.
DualResult dual_wilson(const CellComplex& complex, const Contour& contour, const DualWeightConfig& config);

struct ChainSum {
  double sum = 0.0;
  double tail_bound = 0.0;
  std::size_t chain_count = 0;
};
// Sum over n = offset + kernel combinations with ||n||_1 <= n_max; every visited chain is
// checked for the boundary constraint when verify is set.
ChainSum enumerate_chain_sum(const CellComplex& complex, const DualWeightConfig& config, const IntegerChain& offset,
                             bool verify = false);

// Upper bound for sum over y in Z^r of a^{max(|y|_1, n+1)}.
double lattice_tail_bound(int rank, double alpha_max, int n_max);

struct QuadratureResult {
  double value = 0.0;
  double aliasing = 0.0;  // extrapolated error of the full grid, from the even subgrid
  std::size_t free_links = 0;
};
// Spanning-tree gauge fixing, then a periodic trapezoid rule over the free link angles.
QuadratureResult direct_u1_oracle(const CellComplex& complex, const std::vector<double>& alpha, int grid = 32,
                                  double tol = 1e-8);
// Same integrand with exp(i theta(C)) inserted, divided by Z.
QuadratureResult direct_u1_wilson(const CellComplex& complex, const Contour& contour, const std::vector<double>& alpha,
                                  int grid = 32, double tol = 1e-8);

}  // namespace inducedym
