#include <doctest.h>

#include "inducedym/errors.hpp"
#include "inducedym/fockcheck.hpp"
#include "inducedym/montecarlo.hpp"

#include <cmath>
#include <numbers>

using namespace inducedym;

namespace {

// h_n of the given eigenvalues by multiplying the geometric series one variable at a time
std::vector<std::complex<double>> h_by_products(const std::vector<std::complex<double>>& x, int k) {
  std::vector<std::complex<double>> h(k + 1, 0.0);
  h[0] = 1;
  for (auto xi : x)
    for (int n = 1; n <= k; ++n) h[n] += xi * h[n - 1];
  return h;
}

std::int64_t binom(int n, int k) {
  std::int64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

TEST_CASE("Newton identities against direct expansion") {
  const std::vector<std::complex<double>> x{std::polar(1.0, 0.3), std::polar(1.0, -1.2), 0.5, std::polar(0.8, 2.0)};
  const int k = 12;
  std::vector<std::complex<double>> p(k, 0.0);  // p_1..p_k
  for (int n = 1; n <= k; ++n)
    for (auto xi : x) p[n - 1] += std::pow(xi, n);
  auto h = complete_symmetric_from_power_sums(p, k);
  auto want = h_by_products(x, k);
  for (int n = 0; n <= k; ++n) CHECK(std::abs(h[n] - want[n]) < 1e-12 * std::max(1.0, std::abs(want[n])));
}

TEST_CASE("one-particle matrix") {
  Philox4x32 rng(2, 0);
  auto u = haar_sample(2, rng);
  auto m = one_particle_matrix(u, 3);
  CHECK(m.rows() == 12);
  CHECK(std::abs(m.trace() - 3.0 * (u.trace() + std::conj(u.trace()))) < 1e-13);
  CHECK(unitarity_defect(m) < 1e-13);
}

TEST_CASE("Fock trace special cases") {
  Eigen::MatrixXcd one = Eigen::MatrixXcd::Identity(1, 1);
  CHECK(std::abs(truncated_fock_trace(one, 0.4, 1, 0) - 1.0) < 1e-15);
  CHECK(truncated_fock_trace(one, 0.4, 1, 400).real() == doctest::Approx(1 / (0.6 * 0.6)).epsilon(1e-13));

  Eigen::MatrixXcd minus = -Eigen::MatrixXcd::Identity(1, 1);
  auto chk = verify_det_identity(minus, 0.5, 1, 30);
  CHECK(chk.determinant == doctest::Approx(1 / 2.25));
  // h_n = (n+1)(-1)^n, so the excluded tail is known in closed form
  double tail = 0;
  for (int n = 31; n < 200; ++n) tail += (n + 1) * std::pow(-0.5, n);
  CHECK(chk.relative_error == doctest::Approx(std::abs(tail) * 2.25).epsilon(1e-6));
  CHECK(chk.relative_error <= chk.bound);
  CHECK(verify_det_identity(minus, 0.5, 1, 32).relative_error < 1e-8);

  auto tiny = verify_det_identity(one, 1e-9, 2, 3);
  CHECK(tiny.trace.real() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(tiny.determinant == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("determinant identity on random unitaries") {
  Philox4x32 rng(31, 0);
  int cases = 0;
  for (int n_c : {1, 2})
    for (int n_b : {1, 2})
      for (double a : {0.2, 0.4})
        for (int i = 0; i < 7; ++i) {
          auto u = haar_sample(n_c, rng);
          auto chk = verify_det_identity(u, a, n_b, 40);
          CHECK(chk.relative_error < 1e-6);
          CHECK(chk.relative_error <= chk.bound + 1e-13);
          CHECK(std::abs(chk.trace.imag()) < 1e-10 * chk.determinant);
          ++cases;
        }
  CHECK(cases == 56);
  auto u = haar_sample(2, rng);
  CHECK(verify_det_identity(u, 0.3, 2, 40).relative_error < 1e-6);
}

TEST_CASE("singlet dimensions") {
  auto u1 = singlet_hilbert_series(1, 1, 12);
  for (int n = 0; n <= 12; ++n) CHECK(u1.dims[n] == (n % 2 == 0 ? 1 : 0));

  auto u2 = singlet_hilbert_series(2, 2, 30);
  for (int n = 0; n <= 30; ++n) CHECK(u2.dims[n] == (n % 2 == 0 ? binom(n / 2 + 3, 3) : 0));
  CHECK(u2.residual < 1e-6);

  for (int n_c = 1; n_c <= 3; ++n_c) {
    std::vector<std::int64_t> prev;
    for (int n_b = 1; n_b <= 3; ++n_b) {
      auto h = singlet_hilbert_series(n_c, n_b, 16);
      CHECK(h.dims[0] == 1);
      for (std::size_t n = 0; n < h.dims.size(); ++n) {
        CHECK(h.dims[n] >= 0);
        if (!prev.empty()) CHECK(h.dims[n] >= prev[n]);
      }
      prev = h.dims;
    }
  }
  // N_b < N_c: only signatures with one nonnegative and one nonpositive part appear
  auto thin = singlet_hilbert_series(2, 1, 10);
  for (int n = 0; n <= 10; ++n) CHECK(thin.dims[n] == (n % 2 == 0 ? 1 : 0));
  CHECK_THROWS_AS(singlet_hilbert_series(2, 2, kMaxHilbertDegree + 1), BudgetError);
}

TEST_CASE("singularity exponent from the series") {
  for (auto [n_c, n_b] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {2, 3}}) {
    auto h = singlet_hilbert_series(n_c, n_b, 1000);
    const double s1 = hilbert_partial_sum(h, 0.9), s2 = hilbert_partial_sum(h, 0.95);
    const double slope = std::log(s2 / s1) / std::log(0.1 / 0.05);
    const double want = 2.0 * n_b * n_c - n_c * n_c;
    CHECK(std::abs(slope / want - 1) < 0.1);
  }
}
