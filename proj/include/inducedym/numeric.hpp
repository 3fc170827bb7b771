#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/float128.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace inducedym {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real50 = boost::multiprecision::cpp_bin_float_50;
using Real100 = boost::multiprecision::cpp_bin_float_100;
using Quad = boost::multiprecision::float128;

// Gaussian elimination with partial pivoting; works for double, Real50 and Rational.
template <class T>
T determinant(std::vector<T> a, int n) {
  using std::abs;
  T det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (abs(a[r * n + c]) > abs(a[piv * n + c])) piv = r;
    if (a[piv * n + c] == T(0)) return T(0);
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      det = -det;
    }
    det *= a[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      if (a[r * n + c] == T(0)) continue;
      T f = a[r * n + c] / a[c * n + c];
      for (int k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
    }
  }
  return det;
}

// Rational from "p/q", an integer, or a finite decimal such as "0.75" or "-1e-2".
Rational parse_rational(const std::string& text);

}  // namespace inducedym
