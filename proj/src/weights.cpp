#include "inducedym/weights.hpp"

#include "inducedym/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace inducedym {

namespace {
constexpr const char* kModule = "weights";
constexpr std::size_t kMaxSeriesTerms = 1'000'000;

template <class T>
T series_tolerance();
template <>
double series_tolerance<double>() { return 1e-16; }
template <>
Real50 series_tolerance<Real50>() { return Real50("1e-48"); }
template <>
Real100 series_tolerance<Real100>() { return Real100("1e-98"); }

// m-th Fourier coefficient of |1 - a e^{it}|^{-2n}
template <class T>
T boson_coeff(int m, int n, const T& a) {
  const int mm = std::abs(m);
  if (n == 0 || a == 0) return mm == 0 ? T(1) : T(0);
  const T a2 = a * a;
  T term = 1;
  for (int i = 1; i <= mm; ++i) term = term * T(n - 1 + i) / T(i) * a;
  T sum = term;
  for (std::size_t k = 0;; ++k) {
    if (k >= kMaxSeriesTerms)
      throw PrecisionError(kModule, "Fourier series did not converge within 10^6 terms; alpha too close to 1");
    const double kk = static_cast<double>(k);
    term *= T((n + kk) * (n + kk + mm)) / T((kk + 1) * (kk + mm + 1)) * a2;
    sum += term;
    const double k1 = kk + 1;
    const T next_ratio = T((n + k1) * (n + k1 + mm)) / T((k1 + 1) * (k1 + mm + 1)) * a2;
    if (next_ratio < 1 && term * next_ratio / (1 - next_ratio) < series_tolerance<T>() * sum) break;
  }
  return sum;
}

template <class T>
T binom(int n, int k) {
  if (k < 0 || k > n) return T(0);
  T c = 1;
  for (int i = 1; i <= k; ++i) c = c * T(n - k + i) / T(i);
  return c;
}

// coefficient of e^{ijt} in |1 - a e^{it}|^{2n}
template <class T>
T fermion_coeff(int j, int n, const T& a) {
  if (n == 0 || a == 0) return j == 0 ? T(1) : T(0);
  T s = 0;
  for (int i = std::max(0, j); i <= std::min(n, n + j); ++i) {
    using std::pow;
    s += binom<T>(n, i) * binom<T>(n, i - j) * pow(-a, i) * pow(-a, i - j);
  }
  return s;
}

template <class T>
T mixed_coeff(int m, const ModelCouplings& c) {
  const T ab = T(c.alpha_b);
  const T af = T(c.alpha_f);
  if (c.n_f == 0 || c.alpha_f == 0) return boson_coeff<T>(m, c.n_b, ab);
  T s = 0;
  for (int j = -c.n_f; j <= c.n_f; ++j) s += fermion_coeff<T>(j, c.n_f, af) * boson_coeff<T>(m - j, c.n_b, ab);
  return s;
}

// Matrix [f_{(lambda+rho)_k - rho_l}] / f_0 for each signature, sharing the coefficient cache.
template <class T>
struct ScaledDeterminants {
  const ModelCouplings& couplings;
  std::map<int, T> cache;
  T f0;
  explicit ScaledDeterminants(const ModelCouplings& c) : couplings(c), f0(coeff(0)) {
    if (f0 == 0) throw PrecisionError(kModule, "vanishing zeroth Fourier coefficient");
  }
  T coeff(int m) {
    m = std::abs(m);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    T v = mixed_coeff<T>(m, couplings);
    cache.emplace(m, v);
    return v;
  }
  T scaled_det(const Signature& lambda) {
    const int n = lambda.rank();
    auto mu = shifted_by_rho(lambda);
    std::vector<T> a(n * n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) a[k * n + l] = coeff(mu[k] - (n - 1 - l)) / f0;
    return determinant(std::move(a), n);
  }
};

// The scaled determinant loses about (1-|alpha_b|)^{-N_c(N_c-1)} in relative accuracy.
enum class Tier { Double, Extended, Wide };

Tier precision_tier(const ModelCouplings& c, bool extended) {
  if (c.n_b == 0 || c.alpha_b == 0) return extended ? Tier::Extended : Tier::Double;
  const double loss = -static_cast<double>(c.n_c) * (c.n_c - 1) * std::log10(1.0 - std::abs(c.alpha_b));
  if (loss > 26) return Tier::Wide;
  if (extended || loss > 2 || 1.0 - std::abs(c.alpha_b) < 1e-3) return Tier::Extended;
  return Tier::Double;
}

bool wants_extended(const ModelCouplings& c, bool extended) { return precision_tier(c, extended) != Tier::Double; }

template <class T>
Real50 ratio_in(const Signature& lambda, const ModelCouplings& c) {
  ScaledDeterminants<T> eng(c);
  return Real50(eng.scaled_det(lambda) / eng.scaled_det(Signature::trivial(c.n_c)));
}

void check_rank(const Signature& lambda, const ModelCouplings& c) {
  if (lambda.rank() != c.n_c)
    throw DomainError(kModule, "signature " + lambda.str() + " does not match N_c = " + std::to_string(c.n_c));
}

}  // namespace

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::Determinant: return "determinant";
    case Engine::Quadrature: return "quadrature";
    case Engine::Residue: return "residue";
  }
  return "unknown";
}

void ModelCouplings::validate() const {
  if (n_c < 1) throw DomainError(kModule, "N_c must be at least 1");
  if (n_b < 0 || n_f < 0) throw DomainError(kModule, "flavor counts must be nonnegative");
  if (!(std::abs(alpha_b) < 1.0)) throw DomainError(kModule, "|alpha_b| must be strictly below 1");
  if (!std::isfinite(alpha_f)) throw DomainError(kModule, "alpha_f must be finite");
}

double fourier_coeff(int m, const ModelCouplings& couplings) {
  couplings.validate();
  return mixed_coeff<double>(m, couplings);
}

Real50 fourier_coeff_hp(int m, const ModelCouplings& couplings) {
  couplings.validate();
  return mixed_coeff<Real50>(m, couplings);
}

CharCoefficient char_coefficient(const Signature& lambda, const ModelCouplings& couplings, bool extended) {
  couplings.validate();
  check_rank(lambda, couplings);
  CharCoefficient out;
  out.lambda = lambda;
  out.alpha = couplings.alpha_b;
  out.engine = Engine::Determinant;
  using boost::multiprecision::pow;
  const Tier tier = precision_tier(couplings, extended);
  if (tier == Tier::Wide) {
    ScaledDeterminants<Real100> eng(couplings);
    out.value = Real50(eng.scaled_det(lambda) * pow(eng.f0, couplings.n_c));
  } else if (tier == Tier::Extended) {
    ScaledDeterminants<Real50> eng(couplings);
    out.value = eng.scaled_det(lambda) * pow(eng.f0, couplings.n_c);
  } else {
    ScaledDeterminants<double> eng(couplings);
    out.value = eng.scaled_det(lambda) * std::pow(eng.f0, couplings.n_c);
  }
  return out;
}

Real50 char_coefficient_ratio_hp(const Signature& lambda, const ModelCouplings& couplings) {
  couplings.validate();
  check_rank(lambda, couplings);
  if (precision_tier(couplings, true) == Tier::Wide) return ratio_in<Real100>(lambda, couplings);
  return ratio_in<Real50>(lambda, couplings);
}

double char_coefficient_ratio(const Signature& lambda, const ModelCouplings& couplings, bool extended) {
  if (wants_extended(couplings, extended)) return char_coefficient_ratio_hp(lambda, couplings).convert_to<double>();
  couplings.validate();
  check_rank(lambda, couplings);
  ScaledDeterminants<double> eng(couplings);
  return eng.scaled_det(lambda) / eng.scaled_det(Signature::trivial(couplings.n_c));
}

namespace {
template <class T>
std::vector<double> ratios_in(std::span<const Signature> lambdas, const ModelCouplings& c) {
  ScaledDeterminants<T> eng(c);
  const T base = eng.scaled_det(Signature::trivial(c.n_c));
  std::vector<double> out;
  out.reserve(lambdas.size());
  for (auto& l : lambdas) {
    check_rank(l, c);
    out.push_back(static_cast<double>(eng.scaled_det(l) / base));
  }
  return out;
}
}  // namespace

std::vector<double> char_coefficient_ratios(std::span<const Signature> lambdas, const ModelCouplings& couplings) {
  couplings.validate();
  switch (precision_tier(couplings, false)) {
    case Tier::Wide: return ratios_in<Real100>(lambdas, couplings);
    case Tier::Extended: return ratios_in<Real50>(lambdas, couplings);
    case Tier::Double: break;
  }
  return ratios_in<double>(lambdas, couplings);
}

QuadratureValue char_coefficient_quadrature(const Signature& lambda, const ModelCouplings& couplings, int grid,
                                            double tol) {
  couplings.validate();
  check_rank(lambda, couplings);
  const int n = couplings.n_c;
  if (n > 3) throw BudgetError(kModule, "quadrature engine supports N_c <= 3");
  if (grid < 2 || (grid & (grid - 1)) != 0) throw DomainError(kModule, "grid size must be a power of two >= 2");
  const int M = grid;
  std::vector<double> w1(M);
  for (int i = 0; i < M; ++i) {
    const std::complex<double> z = std::polar(1.0, 2 * std::numbers::pi * i / M);
    w1[i] = std::pow(std::norm(1.0 - couplings.alpha_f * z), couplings.n_f) /
            std::pow(std::norm(1.0 - couplings.alpha_b * z), couplings.n_b);
  }
  auto mu = shifted_by_rho(lambda);
  auto rho = shifted_by_rho(Signature::trivial(n));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<std::vector<int>, int>> perms;
  do {
    int inv = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) inv += perm[a] > perm[b];
    perms.push_back({perm, inv % 2 ? -1 : 1});
  } while (std::next_permutation(perm.begin(), perm.end()));
  auto phase = [&](int m, int idx) { return std::polar(1.0, 2 * std::numbers::pi * ((static_cast<long>(m) * idx) % M) / M); };

  std::vector<int> idx(n, 0);
  std::complex<double> full = 0, half = 0;
  const long total = static_cast<long>(std::pow(M, n));
  for (long flat = 0; flat < total; ++flat) {
    long f = flat;
    bool even = true;
    double w = 1;
    for (int j = 0; j < n; ++j) {
      idx[j] = static_cast<int>(f % M);
      f /= M;
      even = even && idx[j] % 2 == 0;
      w *= w1[idx[j]];
    }
    std::complex<double> xm = 0, xr = 0;
    for (auto& [p, sg] : perms) {
      std::complex<double> tm = 1, tr = 1;
      for (int j = 0; j < n; ++j) {
        tm *= phase(mu[p[j]], idx[j]);
        tr *= phase(rho[p[j]], idx[j]);
      }
      xm += static_cast<double>(sg) * tm;
      xr += static_cast<double>(sg) * tr;
    }
    const std::complex<double> v = w * std::conj(xm) * xr;
    full += v;
    if (even) half += v;
  }
  double nfact = 1;
  for (int j = 2; j <= n; ++j) nfact *= j;
  QuadratureValue out;
  out.value = full.real() / (nfact * static_cast<double>(total));
  const double half_value = half.real() * std::pow(2.0, n) / (nfact * static_cast<double>(total));
  out.aliasing = std::abs(out.value - half_value);
  if (out.aliasing > tol * std::max(1.0, std::abs(out.value)))
    throw AliasingError(kModule, "quadrature grid " + std::to_string(M) + " too coarse: halving it changes c by " +
                                     short_number(out.aliasing));
  return out;
}

double wilson_loop_one_plaquette(const ModelCouplings& couplings) {
  std::vector<int> fund(couplings.n_c, 0);
  fund[0] = 1;
  return char_coefficient_ratio(Signature(fund), couplings);
}

namespace {

template <int Nodes>
std::pair<double, double> eigenvalue_moments(int n_b, int n_c) {
  using rule = boost::math::quadrature::gauss<double, Nodes>;
  const auto& x = rule::abscissa();
  const auto& w = rule::weights();
  std::vector<double> t, wt;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int s : {1, -1}) {
      if (s == -1 && x[i] == 0) continue;
      const double u = 0.5 * std::numbers::pi * s * x[i];
      t.push_back(std::tan(u));
      // dx = sec^2 u du, (1 + x^2)^{-n_b} = cos^{2 n_b} u
      wt.push_back(0.5 * std::numbers::pi * w[i] * std::pow(std::cos(u), 2 * n_b - 2));
    }
  }
  const std::size_t K = t.size();
  std::vector<std::size_t> idx(n_c, 0);
  double z = 0, sum_sq = 0, sq_sum = 0;
  while (true) {
    double weight = 1, vdm = 1, s1 = 0, s2 = 0;
    for (int j = 0; j < n_c; ++j) {
      weight *= wt[idx[j]];
      s1 += t[idx[j]];
      s2 += t[idx[j]] * t[idx[j]];
      for (int k = j + 1; k < n_c; ++k) vdm *= t[idx[j]] - t[idx[k]];
    }
    weight *= vdm * vdm;
    z += weight;
    sum_sq += weight * s2;
    sq_sum += weight * s1 * s1;
    int j = 0;
    while (j < n_c && ++idx[j] == K) idx[j++] = 0;
    if (j == n_c) break;
  }
  return {sum_sq / z, sq_sum / z};
}

}  // namespace

MomentReport moments_B1B2(int n_b, int n_c, int nodes) {
  if (n_c < 1) throw DomainError(kModule, "N_c must be at least 1");
  if (n_b <= n_c)
    throw DomainError(kModule, "second moments diverge for N_b <= N_c: the Cauchy-type eigenvalue density has no variance");
  if (n_c > 3) throw BudgetError(kModule, "moment quadrature supports N_c <= 3");
  if (nodes != 200 && nodes != 100) throw DomainError(kModule, "supported Gauss-Legendre orders are 100 and 200");
  auto fine = nodes == 200 ? eigenvalue_moments<200>(n_b, n_c) : eigenvalue_moments<100>(n_b, n_c);
  auto coarse = nodes == 200 ? eigenvalue_moments<100>(n_b, n_c) : eigenvalue_moments<50>(n_b, n_c);
  MomentReport r;
  r.n_b = n_b;
  r.n_c = n_c;
  r.trace_square = fine.first;
  r.square_trace = fine.second;
  r.trace_square_error = std::abs(fine.first - coarse.first);
  r.square_trace_error = std::abs(fine.second - coarse.second);
  const double N = n_c;
  if (n_c == 1) {
    // Tr X^2 = (Tr X)^2 for one color: only B1 + B2 is determined; put it all in B2.
    r.b1 = 0;
    r.b2 = r.trace_square;
  } else {
    r.b1 = (r.square_trace - r.trace_square / N) / (N * N - 1);
    r.b2 = (r.trace_square - r.square_trace / N) / (N * N - 1);
  }
  return r;
}

SeriesValue heat_kernel_weight(std::span<const double> theta, double t, double cutoff, double r, double tol) {
  if (!(t > 0)) throw DomainError(kModule, "heat kernel time must be positive");
  if (!(cutoff > 0)) throw DomainError(kModule, "cutoff must be positive");
  const int n = static_cast<int>(theta.size());
  if (n < 1) throw DomainError(kModule, "need at least one eigenphase");
  auto energy = [&](const Signature& s) { return casimir2(s) + r * static_cast<double>(charge(s)) * charge(s); };
  SeriesValue out;
  for (auto& s : signatures_by_casimir(n, cutoff, r)) {
    const double d = static_cast<double>(weyl_dimension(s));
    out.value += d * std::exp(-t * energy(s)) * character(s, theta);
    ++out.terms;
  }
  // tail estimated from the band just above the cutoff, |chi| <= d
  const double upper = cutoff + std::max(cutoff, 40.0 / t);
  for (auto& s : signatures_by_casimir(n, upper, r)) {
    const double e = energy(s);
    if (e <= cutoff) continue;
    const double d = static_cast<double>(weyl_dimension(s));
    out.tail_bound += d * d * std::exp(-t * e);
  }
  if (out.tail_bound > tol)
    throw TailError(kModule, "heat kernel cutoff too small: tail estimate " + short_number(out.tail_bound));
  return out;
}

}  // namespace inducedym
