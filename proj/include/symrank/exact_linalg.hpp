#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "symrank/local_ops.hpp"
#include "symrank/scalar.hpp"
#include "symrank/state.hpp"

namespace symrank {

// Exact rank of a rational matrix: clear denominators per row, then
// fraction-free Bareiss elimination over the integers.
inline int rational_matrix_rank(std::vector<std::vector<Rational>> m) {
  if (m.empty()) return 0;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  std::vector<std::vector<mpz_class>> z(rows, std::vector<mpz_class>(cols));
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(m[i].size()) != cols) throw std::invalid_argument("ragged matrix");
    mpz_class l = 1;
    for (const auto& q : m[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    for (int j = 0; j < cols; ++j) {
      Rational s = m[i][j] * Rational(l);
      z[i][j] = s.get_num();
    }
  }
  int rank = 0;
  mpz_class prev = 1;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i)
      if (z[i][col] != 0) { pivot = i; break; }
    if (pivot < 0) continue;
    std::swap(z[rank], z[pivot]);
    for (int i = rank + 1; i < rows; ++i) {
      for (int j = col + 1; j < cols; ++j) {
        mpz_class t = z[rank][col] * z[i][j] - z[i][col] * z[rank][j];
        mpz_divexact(z[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      z[i][col] = 0;
    }
    prev = z[rank][col];
    ++rank;
  }
  return rank;
}

// Numerical rank via SVD with a relative singular value cutoff.
inline int float_matrix_rank(const Eigen::MatrixXcd& m, double rel_tol = 1e-10) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++r;
  return r;
}

// Rank of the flattening with row_parties on the row side and the remaining
// parties on the column side. Rows and columns are compacted to the index
// patterns that actually occur, which keeps huge many-party flattenings small.
// All-rational states get an exact rank, mixed ones an SVD rank.
inline int flattening_rank(const SparseState& s, const std::vector<int>& row_parties,
                           double rel_tol = 1e-10) {
  std::vector<bool> on_row(s.parties(), false);
  for (int p : row_parties) {
    if (p < 0 || p >= s.parties()) throw std::invalid_argument("flattening party out of range");
    if (on_row[p]) throw std::invalid_argument("duplicate flattening party");
    on_row[p] = true;
  }
  std::map<MultiIndex, int> row_id, col_id;
  struct Entry { int r, c; Scalar v; };
  std::vector<Entry> entries;
  for (const auto& [k, v] : s.amplitudes()) {
    MultiIndex rk, ck;
    for (int p = 0; p < s.parties(); ++p) (on_row[p] ? rk : ck).push_back(k[p]);
    int r = static_cast<int>(row_id.emplace(rk, row_id.size()).first->second);
    int c = static_cast<int>(col_id.emplace(ck, col_id.size()).first->second);
    entries.push_back({r, c, v});
  }
  if (entries.empty()) return 0;
  if (s.all_rational()) {
    std::vector<std::vector<Rational>> m(row_id.size(), std::vector<Rational>(col_id.size(), 0));
    for (const auto& e : entries) m[e.r][e.c] = e.v.rational();
    return rational_matrix_rank(std::move(m));
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<long>(row_id.size()),
                                              static_cast<long>(col_id.size()));
  for (const auto& e : entries) m(e.r, e.c) = e.v.to_complex();
  return float_matrix_rank(m, rel_tol);
}

inline int flattening_rank_single(const SparseState& s, int party, double rel_tol = 1e-10) {
  return flattening_rank(s, {party}, rel_tol);
}

// Exact determinant of a square all-rational matrix (fraction Gaussian
// elimination; fine at the sizes witness checks need).
inline Rational rational_det(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  if (!m.all_rational()) throw std::invalid_argument("determinant needs a rational matrix");
  const int n = m.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j).rational();
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int i = col; i < n; ++i)
      if (a[i][col] != 0) { pivot = i; break; }
    if (pivot < 0) return Rational(0);
    if (pivot != col) { std::swap(a[pivot], a[col]); det = -det; }
    det *= a[col][col];
    Rational inv = Rational(1) / a[col][col];
    for (int i = col + 1; i < n; ++i) {
      Rational f = a[i][col] * inv;
      if (f == 0) continue;
      for (int j = col; j < n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  return det;
}

}  // namespace symrank
