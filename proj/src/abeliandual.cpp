#include "inducedym/abeliandual.hpp"

#include "inducedym/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>

namespace inducedym {

namespace {
constexpr const char* kModule = "abeliandual";
constexpr std::size_t kMaxFreeLinks = 6;

double alpha_max(const DualWeightConfig& c) {
  double a = 0;
  for (double x : c.alpha) a = std::max(a, x);
  return a;
}

double prefactor(const DualWeightConfig& c) {
  double f = 1;
  for (double a : c.alpha) f /= 1 - a * a;
  return f;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace

DualWeightConfig DualWeightConfig::uniform(const CellComplex& complex, double alpha, int n_max) {
  DualWeightConfig c;
  c.alpha.assign(complex.num_plaquettes(), alpha);
  c.n_max = n_max;
  return c;
}

std::vector<double> DualWeightConfig::log_weights() const {
  std::vector<double> w;
  for (double a : alpha) w.push_back(a == 0 ? std::numeric_limits<double>::infinity() : -std::log(a));
  return w;
}

void DualWeightConfig::validate(const CellComplex& complex) const {
  if (alpha.size() != complex.num_plaquettes()) throw DomainError(kModule, "need one coupling per plaquette");
  for (double a : alpha)
    if (!(a >= 0 && a < 1)) throw DomainError(kModule, "plaquette couplings must lie in [0, 1)");
  if (n_max < 0) throw DomainError(kModule, "L1 cutoff must be nonnegative");
}

double lattice_tail_bound(int rank, double a, int n_max) {
  if (rank < 0) throw DomainError(kModule, "rank must be nonnegative");
  if (a == 0 || rank == 0) return 0.0;
  // number of y in Z^r with |y|_1 = m
  auto count = [&](int m) {
    if (m == 0) return 1.0L;
    long double s = 0;
    for (int k = 1; k <= std::min(rank, m); ++k) {
      long double c_rk = 1, c_mk = 1;
      for (int i = 1; i <= k; ++i) c_rk = c_rk * (rank - k + i) / i;
      for (int i = 1; i <= k - 1; ++i) c_mk = c_mk * (m - 1 - (k - 1) + i) / i;
      s += std::pow(2.0L, k) * c_rk * c_mk;
    }
    return s;
  };
  const int edge = n_max + 1;
  long double inner = 0;
  for (int m = 0; m <= edge; ++m) inner += count(m);
  long double total = inner * std::pow(static_cast<long double>(a), edge);
  long double prev = std::numeric_limits<long double>::infinity();
  for (int m = edge + 1;; ++m) {
    const long double t = count(m) * std::pow(static_cast<long double>(a), m);
    total += t;
    if (t < 1e-30L * total && t < prev) break;
    if (m > edge + 100000) break;
    prev = t;
  }
  return static_cast<double>(total);
}

ChainSum enumerate_chain_sum(const CellComplex& complex, const DualWeightConfig& config, const IntegerChain& offset,
                             bool verify) {
  config.validate(complex);
  if (offset.degree != 2) throw DomainError(kModule, "offset must be a 2-chain");
  const std::size_t np = complex.num_plaquettes();
  const auto kernel = kernel_hermite_basis(complex);
  const std::size_t r = kernel.rows.size();
  const auto logw = config.log_weights();
  const IntegerChain target = boundary(complex, offset);

  std::vector<std::int64_t> n(np, 0);
  for (auto& [p, c] : offset.coeffs) n[p] = c;

  ChainSum out;
  auto weight_of = [&]() {
    double lw = 0;
    for (std::size_t p = 0; p < np; ++p)
      if (n[p] != 0) lw += logw[p] * static_cast<double>(n[p] < 0 ? -n[p] : n[p]);
    return std::exp(-lw);
  };
  auto check = [&]() {
    IntegerChain c;
    c.degree = 2;
    for (std::size_t p = 0; p < np; ++p) c.add(p, n[p]);
    if (!(boundary(complex, c) == target)) throw DomainError(kModule, "enumerated chain violates the boundary constraint");
  };
  if (r == 0) {
    if (verify) check();
    out.sum = weight_of();
    out.chain_count = 1;
    return out;
  }

  const std::int64_t nmax = config.n_max;
  std::size_t nodes = 0;
  // column boundary after coordinate i is fixed: columns < pivots[i+1] are final
  auto final_l1 = [&](std::size_t upto) {
    std::int64_t s = 0;
    for (std::size_t c = 0; c < upto; ++c) s += n[c] < 0 ? -n[c] : n[c];
    return s;
  };
  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    if (++nodes > config.node_budget)
      throw BudgetError(kModule, "chain enumeration exceeds the node budget; lower n_max");
    if (i == r) {
      std::int64_t l1 = final_l1(np);
      if (l1 > nmax) return;
      if (verify) check();
      out.sum += weight_of();
      ++out.chain_count;
      return;
    }
    const auto& row = kernel.rows[i];
    const std::size_t c = kernel.pivots[i];
    const std::int64_t d = row[c];
    const std::int64_t used = final_l1(c);
    if (used > nmax) return;
    const std::int64_t room = nmax - used;
    const std::int64_t base = n[c];
    const std::int64_t lo = ceil_div(-room - base, d), hi = floor_div(room - base, d);
    const std::size_t next_final = i + 1 < r ? kernel.pivots[i + 1] : np;
    for (std::int64_t k = lo; k <= hi; ++k) {
      for (std::size_t p = c; p < np; ++p) n[p] += k * row[p];
      if (final_l1(next_final) <= nmax) dfs(i + 1);
      for (std::size_t p = c; p < np; ++p) n[p] -= k * row[p];
    }
  };
  dfs(0);
  out.tail_bound = lattice_tail_bound(static_cast<int>(r), alpha_max(config), config.n_max);
  return out;
}

DualResult dual_partition(const CellComplex& complex, const DualWeightConfig& config) {
  IntegerChain zero;
  zero.degree = 2;
  auto s = enumerate_chain_sum(complex, config, zero);
  const double f = prefactor(config);
  return {f * s.sum, f * s.tail_bound, s.chain_count};
}

DualResult dual_wilson(const CellComplex& complex, const Contour& contour, const DualWeightConfig& config) {
  IntegerChain zero;
  zero.degree = 2;
  if (contour.steps.empty()) {
    auto den = enumerate_chain_sum(complex, config, zero);
    return {1.0, 0.0, den.chain_count};
  }
  const IntegerChain c = contour_chain(complex, contour);
  IntegerChain s = particular_surface(complex, c);
  IntegerChain offset;
  offset.degree = 2;
  for (auto& [p, v] : s.coeffs) offset.add(p, -v);
  auto num = enumerate_chain_sum(complex, config, offset);
  auto den = enumerate_chain_sum(complex, config, zero);
  DualResult out;
  out.value = num.sum / den.sum;
  out.tail_bound = std::max(num.tail_bound / den.sum, num.sum * den.tail_bound / (den.sum * (den.sum + den.tail_bound)));
  out.chain_count = num.chain_count + den.chain_count;
  return out;
}

namespace {

struct GaugeFixed {
  std::vector<std::size_t> free_links;
  std::vector<std::vector<int>> plaquette_coeffs;  // per plaquette, coefficient of each free link
};

GaugeFixed gauge_fix(const CellComplex& complex) {
  auto tree = spanning_tree(complex);
  std::vector<bool> in_tree(complex.num_links(), false);
  for (auto l : tree) in_tree[l] = true;
  GaugeFixed g;
  std::vector<int> position(complex.num_links(), -1);
  for (std::size_t l = 0; l < complex.num_links(); ++l)
    if (!in_tree[l]) {
      position[l] = static_cast<int>(g.free_links.size());
      g.free_links.push_back(l);
    }
  if (g.free_links.size() > kMaxFreeLinks)
    throw BudgetError(kModule, "gauge-fixed integral has " + std::to_string(g.free_links.size()) +
                                   " free links; the oracle supports at most 6");
  for (auto& p : complex.plaquettes()) {
    std::vector<int> coeffs(g.free_links.size(), 0);
    for (auto& s : p.boundary)
      if (position[s.link] >= 0) coeffs[position[s.link]] += s.sign;
    g.plaquette_coeffs.push_back(std::move(coeffs));
  }
  return g;
}

// Trapezoid sums of prod_p w_p * phase on the M-grid and its even sub-grid.
std::pair<std::complex<double>, std::complex<double>> trapezoid(const GaugeFixed& g, const std::vector<double>& alpha,
                                                                const std::vector<int>& phase_coeffs, int M) {
  const std::size_t F = g.free_links.size();
  const std::size_t P = g.plaquette_coeffs.size();
  std::vector<std::vector<double>> table(P, std::vector<double>(M));
  for (std::size_t p = 0; p < P; ++p)
    for (int k = 0; k < M; ++k)
      table[p][k] = 1.0 / std::norm(1.0 - alpha[p] * std::polar(1.0, 2 * std::numbers::pi * k / M));
  std::vector<std::complex<double>> phase(M);
  for (int k = 0; k < M; ++k) phase[k] = std::polar(1.0, 2 * std::numbers::pi * k / M);

  // each plaquette factor is applied at the level of the last free link it depends on
  std::vector<std::vector<std::size_t>> closes(F + 1);
  std::vector<std::size_t> constant;
  for (std::size_t p = 0; p < P; ++p) {
    std::size_t last = F;
    for (std::size_t f = 0; f < F; ++f)
      if (g.plaquette_coeffs[p][f] != 0) last = f;
    if (last == F) constant.push_back(p);
    else closes[last].push_back(p);
  }
  std::vector<std::vector<std::pair<std::size_t, long>>> touches(F);
  for (std::size_t p = 0; p < P; ++p)
    for (std::size_t f = 0; f < F; ++f)
      if (g.plaquette_coeffs[p][f] != 0) touches[f].emplace_back(p, g.plaquette_coeffs[p][f]);
  const long mask = M - 1;  // M is a power of two
  std::vector<long> idx(P, 0);
  long phase_idx = 0;
  std::complex<double> full = 0, half = 0;
  double w0 = 1;
  for (auto p : constant) w0 *= table[p][0];
  std::function<void(std::size_t, double, bool)> rec = [&](std::size_t f, double w, bool even) {
    if (f == F) {
      const std::complex<double> v = w * phase[phase_idx & mask];
      full += v;
      if (even) half += v;
      return;
    }
    for (int k = 0; k < M; ++k) {
      for (auto [p, c] : touches[f]) idx[p] += c * k;
      phase_idx += static_cast<long>(phase_coeffs[f]) * k;
      double wk = w;
      for (auto p : closes[f]) wk *= table[p][idx[p] & mask];
      rec(f + 1, wk, even && k % 2 == 0);
      for (auto [p, c] : touches[f]) idx[p] -= c * k;
      phase_idx -= static_cast<long>(phase_coeffs[f]) * k;
    }
  };
  rec(0, w0, true);
  const double n_full = std::pow(static_cast<double>(M), static_cast<double>(F));
  const double n_half = std::pow(static_cast<double>(M / 2), static_cast<double>(F));
  return {full / n_full, half / n_half};
}

// The trapezoid error decays geometrically in the grid size, so the leading aliasing term
// of the full grid is at most the square of the half-grid discrepancy over the value.
double extrapolated_aliasing(std::complex<double> full, std::complex<double> half) {
  const double d = std::abs(full - half);
  const double scale = std::abs(full);
  if (scale == 0 || d > 0.1 * scale) return d;
  return d * d / scale;
}

void check_oracle_inputs(const CellComplex& complex, const std::vector<double>& alpha, int grid) {
  if (alpha.size() != complex.num_plaquettes()) throw DomainError(kModule, "need one coupling per plaquette");
  for (double a : alpha)
    if (!(std::abs(a) < 1)) throw DomainError(kModule, "plaquette couplings must satisfy |alpha| < 1");
  if (grid < 2 || (grid & (grid - 1)) != 0) throw DomainError(kModule, "grid size must be a power of two >= 2");
}

}  // namespace

QuadratureResult direct_u1_oracle(const CellComplex& complex, const std::vector<double>& alpha, int grid, double tol) {
  check_oracle_inputs(complex, alpha, grid);
  auto g = gauge_fix(complex);
  auto [full, half] = trapezoid(g, alpha, std::vector<int>(g.free_links.size(), 0), grid);
  QuadratureResult out;
  out.value = full.real();
  out.aliasing = extrapolated_aliasing(full, half);
  out.free_links = g.free_links.size();
  if (out.aliasing > tol * std::max(1.0, std::abs(out.value)))
    throw AliasingError(kModule, "grid " + std::to_string(grid) + " too coarse for the plaquette couplings");
  return out;
}

QuadratureResult direct_u1_wilson(const CellComplex& complex, const Contour& contour, const std::vector<double>& alpha,
                                  int grid, double tol) {
  check_oracle_inputs(complex, alpha, grid);
  validate_contour(complex, contour);
  auto g = gauge_fix(complex);
  std::vector<int> pc(g.free_links.size(), 0);
  for (auto& s : contour.steps)
    for (std::size_t f = 0; f < g.free_links.size(); ++f)
      if (g.free_links[f] == s.link) pc[f] += s.sign;
  auto [zf, zh] = trapezoid(g, alpha, std::vector<int>(g.free_links.size(), 0), grid);
  auto [wf, wh] = trapezoid(g, alpha, pc, grid);
  QuadratureResult out;
  out.value = (wf / zf).real();
  out.aliasing = std::max(extrapolated_aliasing(wf, wh) / std::abs(zf),
                          std::abs(wf / zf) * extrapolated_aliasing(zf, zh) / std::abs(zf));
  out.free_links = g.free_links.size();
  if (out.aliasing > tol) throw AliasingError(kModule, "grid " + std::to_string(grid) + " too coarse for the loop");
  return out;
}

}  // namespace inducedym
