#pragma once

#include <functional>
#include <vector>

#include "symrank/scalar.hpp"
#include "symrank/state.hpp"

namespace symrank {

// Small dense matrix of exact-or-float scalars, row major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Scalar& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  bool all_rational() const {
    for (const auto& x : a_)
      if (!x.is_rational()) return false;
    return true;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Scalar& x = at(i, k);
        if (x.is_zero()) continue;
        for (int j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
      }
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

// Kronecker product; the left factor supplies the high digit of both indices,
// matching the per-party fuse convention on states.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const Scalar& x = a.at(i, j);
      if (x.is_zero()) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) {
          const Scalar& y = b.at(k, l);
          if (y.is_zero()) continue;
          r.at(i * b.rows() + k, j * b.cols() + l) = x * y;
        }
    }
  return r;
}

// One operator per party. Rectangular entries change the local dimension.
using LocalOperatorSet = std::vector<Matrix>;

inline LocalOperatorSet identity_ops(const std::vector<int>& dims) {
  LocalOperatorSet ops;
  ops.reserve(dims.size());
  for (int d : dims) ops.push_back(Matrix::identity(d));
  return ops;
}

// Identity everywhere except one party.
inline LocalOperatorSet single_party_ops(const std::vector<int>& dims, int party, Matrix m) {
  if (party < 0 || party >= static_cast<int>(dims.size()))
    throw std::invalid_argument("party index out of range");
  if (m.cols() != dims[party]) throw std::invalid_argument("operator column count != local dim");
  LocalOperatorSet ops = identity_ops(dims);
  ops[party] = std::move(m);
  return ops;
}

// (M_1 x ... x M_n) |s>. Float noise below chop_eps is dropped; exact
// amplitudes are never chopped.
inline SparseState apply_local(const LocalOperatorSet& ops, const SparseState& s,
                               double chop_eps = 1e-14) {
  if (static_cast<int>(ops.size()) != s.parties())
    throw std::invalid_argument("operator count != party count");
  std::vector<int> out_dims(ops.size());
  for (int p = 0; p < s.parties(); ++p) {
    if (ops[p].cols() != s.dims()[p])
      throw std::invalid_argument("operator column count != local dim");
    out_dims[p] = ops[p].rows();
  }
  SparseState r(out_dims);
  MultiIndex out(s.parties());
  std::function<void(int, const MultiIndex&, const Scalar&)> rec =
      [&](int p, const MultiIndex& in, const Scalar& coeff) {
        if (p == s.parties()) {
          r.add(out, coeff);
          return;
        }
        for (int row = 0; row < ops[p].rows(); ++row) {
          const Scalar& e = ops[p].at(row, in[p]);
          if (e.is_zero()) continue;
          out[p] = row;
          rec(p + 1, in, coeff * e);
        }
      };
  for (const auto& [k, v] : s.amplitudes()) rec(0, k, v);
  r.chop(chop_eps);
  return r;
}

}  // namespace symrank
