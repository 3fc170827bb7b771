#include "inducedym/fockcheck.hpp"

#include "inducedym/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace inducedym {

namespace {
constexpr const char* kModule = "fockcheck";
}

Eigen::MatrixXcd one_particle_matrix(const Eigen::MatrixXcd& u, int n_b) {
  if (n_b < 1) throw DomainError(kModule, "N_b must be at least 1");
  const int n = static_cast<int>(u.rows());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n * n_b, 2 * n * n_b);
  const Eigen::MatrixXcd ubar = u.conjugate();
  for (int a = 0; a < n_b; ++a) {
    m.block(a * n, a * n, n, n) = u;
    m.block((n_b + a) * n, (n_b + a) * n, n, n) = ubar;
  }
  return m;
}

std::vector<std::complex<double>> complete_symmetric_from_power_sums(std::span<const std::complex<double>> p,
                                                                     int k_max) {
  if (k_max < 0) throw DomainError(kModule, "cutoff must be nonnegative");
  if (static_cast<int>(p.size()) < k_max) throw DomainError(kModule, "need power sums p_1..p_K");
  std::vector<std::complex<double>> h(k_max + 1);
  h[0] = 1;
  for (int n = 1; n <= k_max; ++n) {
    std::complex<double> s = 0;
    for (int k = 1; k <= n; ++k) s += p[k - 1] * h[n - k];
    h[n] = s / static_cast<double>(n);
  }
  return h;
}

std::complex<double> truncated_fock_trace(const Eigen::MatrixXcd& u, double alpha, int n_b, int k_max) {
  if (!(alpha > 0 && alpha < 1)) throw DomainError(kModule, "alpha must lie in (0, 1)");
  if (k_max < 0) throw DomainError(kModule, "cutoff must be nonnegative");
  const Eigen::MatrixXcd m = one_particle_matrix(u, n_b);
  // scale by alpha up front: h_n(alpha M) = alpha^n h_n(M)
  const Eigen::MatrixXcd am = alpha * m;
  std::vector<std::complex<double>> p(k_max);
  Eigen::MatrixXcd power = am;
  for (int k = 1; k <= k_max; ++k) {
    p[k - 1] = power.trace();
    power = power * am;
  }
  auto h = complete_symmetric_from_power_sums(p, k_max);
  return std::accumulate(h.begin(), h.end(), std::complex<double>(0));
}

DetIdentityCheck verify_det_identity(const Eigen::MatrixXcd& u, double alpha, int n_b, int k_max) {
  DetIdentityCheck out;
  out.trace = truncated_fock_trace(u, alpha, n_b, k_max);
  const int n = static_cast<int>(u.rows());
  const std::complex<double> d = (Eigen::MatrixXcd::Identity(n, n) - alpha * u).determinant();
  out.determinant = std::pow(std::abs(d), -2.0 * n_b);
  out.relative_error = std::abs(out.trace - out.determinant) / out.determinant;
  // |h_n| <= C(n + D - 1, D - 1) for unitary M of size D, and the determinant is >= (1 + alpha)^{-D}
  const int D = 2 * n_b * n;
  double tail = 0, term = 0;
  for (int k = k_max + 1;; ++k) {
    term = std::exp(k * std::log(alpha) + std::lgamma(k + D) - std::lgamma(k + 1.0) - std::lgamma(static_cast<double>(D)));
    tail += term;
    if (term < 1e-18 * tail && k > k_max + D) break;
  }
  out.bound = tail * std::pow(1 + alpha, D);
  out.empirical_c = out.relative_error / (std::pow(alpha, k_max + 1) * std::pow(k_max + 1.0, D));
  if (out.relative_error > out.bound + 1e-12)
    throw PrecisionError(kModule, "trace and determinant disagree beyond the tail bound");
  return out;
}

HilbertSeries singlet_hilbert_series(int n_c, int n_b, int degree, int grid) {
  if (n_c < 1 || n_c > 3) throw BudgetError(kModule, "Hilbert series quadrature supports N_c <= 3");
  if (n_b < 1) throw DomainError(kModule, "N_b must be at least 1");
  if (degree < 0) throw DomainError(kModule, "degree cutoff must be nonnegative");
  if (degree > kMaxHilbertDegree) throw BudgetError(kModule, "degree cutoff above " + std::to_string(kMaxHilbertDegree));
  const int need = degree + n_c;  // exact for trigonometric degree < M
  if (grid == 0) {
    grid = 2;
    while (grid <= need) grid *= 2;
  }
  if (grid < 2 || (grid & (grid - 1)) != 0) throw DomainError(kModule, "grid must be a power of two");
  if (grid <= need) throw DomainError(kModule, "grid too small for the requested degree");

  const int D = degree;
  const int M = grid;
  // ghat[m][a]: m-th Fourier coefficient of the per-color h_a(theta)
  std::vector<std::vector<Quad>> ghat(n_c, std::vector<Quad>(D + 1, Quad(0)));
  std::vector<Quad> re(D + 1), im(D + 1);
  const Quad two_pi = 2 * boost::multiprecision::acos(Quad(-1));
  for (int i = 0; i < M; ++i) {
    const Quad th = two_pi * i / M;
    const Quad c = cos(th), s = sin(th);
    // generating function (1 - t z)^{-N_b} (1 - t zbar)^{-N_b}: repeated prefix recurrences
    std::fill(re.begin(), re.end(), Quad(0));
    std::fill(im.begin(), im.end(), Quad(0));
    re[0] = 1;
    for (int pass = 0; pass < 2 * n_b; ++pass) {
      const Quad sg = pass < n_b ? s : Quad(-s);
      for (int n = 1; n <= D; ++n) {
        // y_n += z y_{n-1}
        const Quad r = re[n - 1], q = im[n - 1];
        re[n] += c * r - sg * q;
        im[n] += c * q + sg * r;
      }
    }
    for (int m = 0; m < n_c; ++m) {
      const Quad cm = cos(m * th);
      for (int a = 0; a <= D; ++a) ghat[m][a] += re[a] * cm;
    }
  }
  for (auto& row : ghat)
    for (auto& v : row) v /= M;

  // dim_n = (1/N!) sum_{sigma,tau} sgn * [conv_j ghat(|rho_sigma(j) - rho_tau(j)|)]_n
  std::vector<int> perm(n_c);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<std::vector<int>, int>> perms;
  do {
    int inv = 0;
    for (int a = 0; a < n_c; ++a)
      for (int b = a + 1; b < n_c; ++b) inv += perm[a] > perm[b];
    perms.push_back({perm, inv % 2 ? -1 : 1});
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<Quad> total(D + 1, Quad(0));
  for (auto& [sp, ss] : perms)
    for (auto& [tp, ts] : perms) {
      std::vector<Quad> acc(D + 1, Quad(0));
      acc[0] = 1;
      for (int j = 0; j < n_c; ++j) {
        const auto& g = ghat[std::abs(sp[j] - tp[j])];
        std::vector<Quad> next(D + 1, Quad(0));
        for (int a = 0; a <= D; ++a) {
          if (acc[a] == 0) continue;
          for (int b = 0; a + b <= D; ++b) next[a + b] += acc[a] * g[b];
        }
        acc = std::move(next);
      }
      for (int n = 0; n <= D; ++n) total[n] += (ss * ts) * acc[n];
    }
  Quad nfact = 1;
  for (int j = 2; j <= n_c; ++j) nfact *= j;

  HilbertSeries out;
  out.grid = M;
  for (int n = 0; n <= D; ++n) {
    const Quad v = total[n] / nfact;
    if (v > Quad(9.0e18)) throw BudgetError(kModule, "singlet dimension exceeds 64-bit range");
    const Quad r = round(v);
    out.residual = std::max(out.residual, abs(v - r).convert_to<double>());
    out.dims.push_back(r.convert_to<std::int64_t>());
  }
  if (out.residual >= 1e-6)
    throw PrecisionError(kModule, "rounding residual " + short_number(out.residual) + " too large; grid insufficient");
  return out;
}

double hilbert_partial_sum(const HilbertSeries& series, double alpha) {
  Quad s = 0, a = 1;
  const Quad x = alpha;
  for (auto d : series.dims) {
    s += a * Quad(d);
    a *= x;
  }
  return s.convert_to<double>();
}

}  // namespace inducedym
