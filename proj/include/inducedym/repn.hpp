#pragma once

#include "inducedym/numeric.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace inducedym {

// Highest weight of a U(N) irrep: nonincreasing integers, one per color.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<int> parts);
  static Signature trivial(int n_c) { return Signature(std::vector<int>(n_c, 0)); }
  static Signature parse(const std::string& text);  // "1,0,-1" or "(1,0,-1)"

  int rank() const { return static_cast<int>(parts_.size()); }
  int operator[](int i) const { return parts_[i]; }
  const std::vector<int>& parts() const { return parts_; }
  bool is_trivial() const;
  std::string str() const;
  auto operator<=>(const Signature&) const = default;

 private:
  std::vector<int> parts_;
};

std::uint64_t weyl_dimension(const Signature& lambda);
long casimir2(const Signature& lambda);
long charge(const Signature& lambda);

// Weight multiplicities from Gelfand-Tsetlin patterns; tables are cached.
struct WeightTable {
  Signature highest;
  std::map<std::vector<int>, std::int64_t> multiplicity;
};
constexpr std::size_t kDefaultPatternBudget = 5'000'000;
std::shared_ptr<const WeightTable> weight_multiplicities(const Signature& lambda,
                                                        std::size_t pattern_budget = kDefaultPatternBudget);

// Mean of sum_k |n_k| over the weights, as an exact fraction.
Rational casimir1(const Signature& lambda);

// Character at eigenphases theta. Uses the ratio of alternants, or the weight sum
// when two eigenvalues nearly coincide.
std::complex<double> character(const Signature& lambda, std::span<const double> theta);
std::complex<double> character_weight_sum(const Signature& lambda, std::span<const double> theta);

// det[exp(i mu_k theta_l)]
std::complex<double> alternant(std::span<const int> mu, std::span<const double> theta);
std::vector<int> shifted_by_rho(const Signature& lambda);  // lambda + (N-1, ..., 0)

// All signatures of rank n_c with every |part| <= max_abs, in lexicographic order.
std::vector<Signature> signatures_in_box(int n_c, int max_abs);

// Signatures with Cas2 + r q^2 <= cutoff (r >= 0), sorted by that energy, ties lexicographic.
std::vector<Signature> signatures_by_casimir(int n_c, double cutoff, double r = 0.0);

}  // namespace inducedym
