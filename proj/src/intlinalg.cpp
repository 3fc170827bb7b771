#include "inducedym/intlinalg.hpp"

#include <utility>

namespace inducedym {

namespace {

void column_axpy(BigMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  for (auto& row : m)
    if (row[src] != 0) row[dst] -= q * row[src];
}

void column_swap(BigMatrix& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

void column_negate(BigMatrix& m, std::size_t c) {
  for (auto& row : m) row[c] = -row[c];
}

// representative of x mod p in (-p/2, p/2]
BigInt centered_quotient(const BigInt& x, const BigInt& p) {
  BigInt rem = x % p;
  if (rem < 0) rem += p;
  if (2 * rem > p) rem -= p;
  return (x - rem) / p;
}

}  // namespace

ColumnEchelon column_echelon(const BigMatrix& a) {
  ColumnEchelon out;
  out.h = a;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  out.v.assign(cols, std::vector<BigInt>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) out.v[i][i] = 1;

  std::size_t pc = 0;
  for (std::size_t i = 0; i < rows && pc < cols; ++i) {
    auto& row = out.h[i];
    while (true) {
      std::size_t k = cols;
      std::size_t nonzero = 0;
      for (std::size_t j = pc; j < cols; ++j) {
        if (row[j] == 0) continue;
        ++nonzero;
        if (k == cols || abs(row[j]) < abs(row[k])) k = j;
      }
      if (nonzero == 0) break;
      if (nonzero == 1) {
        column_swap(out.h, pc, k);
        column_swap(out.v, pc, k);
        if (out.h[i][pc] < 0) {
          column_negate(out.h, pc);
          column_negate(out.v, pc);
        }
        out.pivot_rows.push_back(i);
        ++pc;
        break;
      }
      for (std::size_t j = pc; j < cols; ++j) {
        if (j == k || row[j] == 0) continue;
        BigInt q = row[j] / row[k];
        column_axpy(out.h, j, k, q);
        column_axpy(out.v, j, k, q);
      }
    }
  }
  out.rank = pc;
  return out;
}

RowHermite row_hermite(BigMatrix rows) {
  RowHermite out;
  if (rows.empty()) return out;
  const std::size_t cols = rows[0].size();
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols && pr < rows.size(); ++c) {
    while (true) {
      std::size_t k = rows.size();
      std::size_t nonzero = 0;
      for (std::size_t r = pr; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        ++nonzero;
        if (k == rows.size() || abs(rows[r][c]) < abs(rows[k][c])) k = r;
      }
      if (nonzero == 0) break;
      if (nonzero == 1) {
        std::swap(rows[pr], rows[k]);
        if (rows[pr][c] < 0)
          for (auto& x : rows[pr]) x = -x;
        const BigInt p = rows[pr][c];
        for (std::size_t r = 0; r < pr; ++r) {
          BigInt q = centered_quotient(rows[r][c], p);
          if (q != 0)
            for (std::size_t j = 0; j < cols; ++j) rows[r][j] -= q * rows[pr][j];
        }
        out.pivots.push_back(c);
        ++pr;
        break;
      }
      for (std::size_t r = pr; r < rows.size(); ++r) {
        if (r == k || rows[r][c] == 0) continue;
        BigInt q = rows[r][c] / rows[k][c];
        for (std::size_t j = 0; j < cols; ++j) rows[r][j] -= q * rows[k][j];
      }
    }
  }
  rows.resize(pr);
  out.rows = std::move(rows);
  return out;
}

}  // namespace inducedym
