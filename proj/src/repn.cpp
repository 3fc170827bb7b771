#include "inducedym/repn.hpp"

#include "inducedym/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>

namespace inducedym {

namespace {
constexpr const char* kModule = "repn";
}

Signature::Signature(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw DomainError(kModule, "signature needs at least one part");
  for (std::size_t i = 1; i < parts_.size(); ++i)
    if (parts_[i] > parts_[i - 1]) throw DomainError(kModule, "signature " + str() + " is not nonincreasing");
}

Signature Signature::parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != '(' && c != ')' && c != '[' && c != ']' && c != ' ') t.push_back(c == ';' ? ',' : c);
  std::vector<int> parts;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError(kModule, "cannot parse signature '" + text + "'");
    }
  }
  return Signature(std::move(parts));
}

bool Signature::is_trivial() const {
  return std::all_of(parts_.begin(), parts_.end(), [](int x) { return x == 0; });
}

std::string Signature::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
  return s + ")";
}

std::vector<int> shifted_by_rho(const Signature& lambda) {
  const int n = lambda.rank();
  std::vector<int> mu(n);
  for (int i = 0; i < n; ++i) mu[i] = lambda[i] + n - 1 - i;
  return mu;
}

std::uint64_t weyl_dimension(const Signature& lambda) {
  const int n = lambda.rank();
  auto mu = shifted_by_rho(lambda);
  BigInt num = 1, den = 1;
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      num *= mu[k] - mu[l];
      den *= l - k;
    }
  BigInt d = num / den;
  if (d > std::numeric_limits<std::uint64_t>::max()) throw BudgetError(kModule, "dimension exceeds 64 bits");
  return d.convert_to<std::uint64_t>();
}

long casimir2(const Signature& lambda) {
  const int n = lambda.rank();
  long c = 0;
  for (int j = 0; j < n; ++j) c += static_cast<long>(lambda[j]) * (lambda[j] + n + 1 - 2 * (j + 1));
  return c;
}

long charge(const Signature& lambda) {
  long q = 0;
  for (int x : lambda.parts()) q += x;
  return q;
}

namespace {

std::mutex cache_mutex;
std::map<std::vector<int>, std::shared_ptr<const WeightTable>> cache;

// Enumerate interlacing rows below `top` recursively; row k has length k.
void enumerate_patterns(const std::vector<int>& top, std::vector<int>& weight, int offset,
                        std::map<std::vector<int>, std::int64_t>& out, std::size_t& visited,
                        std::size_t budget) {
  const int k = static_cast<int>(top.size());
  const long top_sum = std::accumulate(top.begin(), top.end(), 0L);
  if (k == 1) {
    weight[0] = top[0] + offset;
    if (++visited > budget) throw BudgetError(kModule, "weight enumeration exceeds the pattern budget");
    ++out[weight];
    return;
  }
  std::vector<int> row(k - 1);
  std::function<void(int)> fill = [&](int i) {
    if (i == k - 1) {
      const long row_sum = std::accumulate(row.begin(), row.end(), 0L);
      weight[k - 1] = static_cast<int>(top_sum - row_sum) + offset;
      enumerate_patterns(row, weight, offset, out, visited, budget);
      return;
    }
    for (int v = top[i + 1]; v <= top[i]; ++v) {
      row[i] = v;
      fill(i + 1);
    }
  };
  fill(0);
}

}  // namespace

std::shared_ptr<const WeightTable> weight_multiplicities(const Signature& lambda, std::size_t pattern_budget) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(lambda.parts());
    if (it != cache.end()) return it->second;
  }
  const int n = lambda.rank();
  if (weyl_dimension(lambda) > pattern_budget)
    throw BudgetError(kModule, "signature " + lambda.str() + " is too large for the weight budget");
  const int shift = lambda[n - 1];
  std::vector<int> top(n);
  for (int i = 0; i < n; ++i) top[i] = lambda[i] - shift;
  auto table = std::make_shared<WeightTable>();
  table->highest = lambda;
  std::vector<int> weight(n);
  std::size_t visited = 0;
  enumerate_patterns(top, weight, shift, table->multiplicity, visited, pattern_budget);
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(lambda.parts(), table);
  return table;
}

Rational casimir1(const Signature& lambda) {
  auto table = weight_multiplicities(lambda);
  BigInt total = 0, count = 0;
  for (auto& [w, m] : table->multiplicity) {
    long s = 0;
    for (int x : w) s += std::abs(x);
    total += BigInt(m) * s;
    count += m;
  }
  return Rational(total, count);
}

std::complex<double> alternant(std::span<const int> mu, std::span<const double> theta) {
  const int n = static_cast<int>(mu.size());
  std::vector<std::complex<double>> a(n * n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) a[k * n + l] = std::polar(1.0, mu[k] * theta[l]);
  return determinant(std::move(a), n);
}

std::complex<double> character_weight_sum(const Signature& lambda, std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != lambda.rank())
    throw DomainError(kModule, "number of eigenphases differs from the rank");
  std::complex<double> s = 0;
  for (auto& [w, m] : weight_multiplicities(lambda)->multiplicity) {
    double phase = 0;
    for (std::size_t k = 0; k < w.size(); ++k) phase += w[k] * theta[k];
    s += static_cast<double>(m) * std::polar(1.0, phase);
  }
  return s;
}

std::complex<double> character(const Signature& lambda, std::span<const double> theta) {
  const int n = lambda.rank();
  if (static_cast<int>(theta.size()) != n) throw DomainError(kModule, "number of eigenphases differs from the rank");
  if (std::all_of(theta.begin(), theta.end(), [](double t) { return t == 0.0; }))
    return static_cast<double>(weyl_dimension(lambda));
  double gap = 2.0;
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) gap = std::min(gap, std::abs(std::polar(1.0, theta[k]) - std::polar(1.0, theta[l])));
  if (gap < 1e-6) return character_weight_sum(lambda, theta);
  auto mu = shifted_by_rho(lambda);
  auto rho = shifted_by_rho(Signature::trivial(n));
  return alternant(mu, theta) / alternant(rho, theta);
}

std::vector<Signature> signatures_in_box(int n_c, int max_abs) {
  if (n_c < 1) throw DomainError(kModule, "rank must be positive");
  if (max_abs < 0) throw DomainError(kModule, "box size must be nonnegative");
  std::vector<Signature> out;
  std::vector<int> parts(n_c);
  std::function<void(int, int)> rec = [&](int i, int upper) {
    if (i == n_c) {
      out.emplace_back(parts);
      return;
    }
    for (int v = upper; v >= -max_abs; --v) {
      parts[i] = v;
      rec(i + 1, v);
    }
  };
  rec(0, max_abs);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Signature> signatures_by_casimir(int n_c, double cutoff, double r) {
  if (n_c < 1) throw DomainError(kModule, "rank must be positive");
  if (r < 0) throw DomainError(kModule, "charge weight must be nonnegative");
  if (cutoff < 0) return {};
  // Cas2 = sum (lambda_j + s_j)^2 - sum s_j^2 with s_j = (N+1-2j)/2
  double shift2 = 0;
  for (int j = 1; j <= n_c; ++j) shift2 += 0.25 * (n_c + 1 - 2 * j) * (n_c + 1 - 2 * j);
  const int box = static_cast<int>(std::floor(std::sqrt(cutoff + shift2) + 0.5 * n_c)) + 1;
  std::vector<std::pair<double, Signature>> keyed;
  for (auto& s : signatures_in_box(n_c, box)) {
    const double e = casimir2(s) + r * static_cast<double>(charge(s)) * charge(s);
    if (e <= cutoff) keyed.push_back({e, s});
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<Signature> out;
  for (auto& [e, s] : keyed) out.push_back(s);
  return out;
}

}  // namespace inducedym
