#pragma once

#include "inducedym/errors.hpp"

#include <cstddef>
#include <vector>

namespace inducedym {

// Truncated multivariate power series in local offsets t_j around a base point.
// Coefficient of t^m is kept for every multi-index with m_j < order_j.
template <class F>
class TaylorJet {
 public:
  TaylorJet() = default;
  explicit TaylorJet(std::vector<int> orders) : orders_(std::move(orders)) {
    std::size_t size = 1;
    for (int o : orders_) {
      if (o < 1) throw DomainError("residues", "jet orders must be positive");
      size *= static_cast<std::size_t>(o);
    }
    coeffs_.assign(size, F(0));
  }

  static TaylorJet constant(const std::vector<int>& orders, const F& c) {
    TaylorJet j(orders);
    j.coeffs_[0] = c;
    return j;
  }
  // base + t_var
  static TaylorJet variable(const std::vector<int>& orders, std::size_t var, const F& base) {
    TaylorJet j = constant(orders, base);
    if (orders[var] > 1) j.coeffs_[j.stride(var)] = F(1);
    return j;
  }

  const std::vector<int>& orders() const { return orders_; }
  std::size_t size() const { return coeffs_.size(); }
  const F& operator[](std::size_t flat) const { return coeffs_[flat]; }
  F& operator[](std::size_t flat) { return coeffs_[flat]; }
  const F& constant_term() const { return coeffs_[0]; }

  std::size_t stride(std::size_t var) const {
    std::size_t s = 1;
    for (std::size_t i = 0; i < var; ++i) s *= static_cast<std::size_t>(orders_[i]);
    return s;
  }
  std::vector<int> multi_index(std::size_t flat) const {
    std::vector<int> m(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      m[i] = static_cast<int>(flat % orders_[i]);
      flat /= orders_[i];
    }
    return m;
  }
  F coefficient(const std::vector<int>& m) const {
    std::size_t flat = 0;
    for (std::size_t i = orders_.size(); i-- > 0;) {
      if (m[i] < 0 || m[i] >= orders_[i]) return F(0);
      flat = flat * orders_[i] + m[i];
    }
    return coeffs_[flat];
  }

  TaylorJet& operator+=(const TaylorJet& o) {
    check(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  TaylorJet& operator-=(const TaylorJet& o) {
    check(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  TaylorJet& operator*=(const F& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
  }
  friend TaylorJet operator+(TaylorJet a, const TaylorJet& b) { return a += b; }
  friend TaylorJet operator-(TaylorJet a, const TaylorJet& b) { return a -= b; }
  friend TaylorJet operator*(TaylorJet a, const F& c) { return a *= c; }

  // Truncated product; cost is size(a) times the number of nonzero coefficients of b.
  friend TaylorJet operator*(const TaylorJet& a, const TaylorJet& b) {
    a.check(b);
    TaylorJet out(a.orders_);
    const std::size_t n = a.orders_.size();
    for (std::size_t fb = 0; fb < b.size(); ++fb) {
      if (b.coeffs_[fb] == 0) continue;
      const auto mb = b.multi_index(fb);
      for (std::size_t fa = 0; fa < a.size(); ++fa) {
        if (a.coeffs_[fa] == 0) continue;
        const auto ma = a.multi_index(fa);
        std::size_t flat = 0;
        bool inside = true;
        for (std::size_t i = n; i-- > 0;) {
          const int s = ma[i] + mb[i];
          if (s >= a.orders_[i]) {
            inside = false;
            break;
          }
          flat = flat * a.orders_[i] + s;
        }
        if (inside) out.coeffs_[flat] += a.coeffs_[fa] * b.coeffs_[fb];
      }
    }
    return out;
  }
  TaylorJet& operator*=(const TaylorJet& o) { return *this = *this * o; }

  // Quotient q with q * d == *this to the stored order.
  friend TaylorJet operator/(const TaylorJet& num, const TaylorJet& den) {
    num.check(den);
    if (den.coeffs_[0] == 0) throw DomainError("residues", "jet division by a series with zero constant term");
    TaylorJet q(num.orders_);
    // flat order is compatible with the partial order on multi-indices
    for (std::size_t f = 0; f < num.size(); ++f) {
      const auto m = num.multi_index(f);
      F acc = num.coeffs_[f];
      for (std::size_t g = 1; g < den.size(); ++g) {
        if (den.coeffs_[g] == 0) continue;
        const auto k = den.multi_index(g);
        std::vector<int> r(m.size());
        bool ok = true;
        for (std::size_t i = 0; i < m.size(); ++i) {
          r[i] = m[i] - k[i];
          if (r[i] < 0) {
            ok = false;
            break;
          }
        }
        if (ok) acc -= den.coeffs_[g] * q.coefficient(r);
      }
      q.coeffs_[f] = acc / den.coeffs_[0];
    }
    return q;
  }

 private:
  void check(const TaylorJet& o) const {
    if (orders_ != o.orders_) throw DomainError("residues", "jets with different truncation orders");
  }
  std::vector<int> orders_;
  std::vector<F> coeffs_;
};

}  // namespace inducedym
