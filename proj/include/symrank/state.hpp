#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "symrank/scalar.hpp"

namespace symrank {

using MultiIndex = std::vector<int>;

// Unnormalized sparse multipartite state: map from basis multi-index to
// amplitude. Value semantics throughout; zero amplitudes are never stored.
class SparseState {
 public:
  SparseState() = default;
  explicit SparseState(std::vector<int> local_dims) : dims_(std::move(local_dims)) {
    for (int d : dims_)
      if (d < 1) throw std::invalid_argument("local dimension must be >= 1");
  }

  const std::vector<int>& dims() const { return dims_; }
  int parties() const { return static_cast<int>(dims_.size()); }
  const std::map<MultiIndex, Scalar>& amplitudes() const { return amps_; }
  std::size_t nonzeros() const { return amps_.size(); }
  bool empty() const { return amps_.empty(); }

  bool all_rational() const {
    for (const auto& [k, a] : amps_)
      if (!a.is_rational()) return false;
    return true;
  }

  void check_index(const MultiIndex& idx) const {
    if (idx.size() != dims_.size()) throw std::invalid_argument("multi-index arity mismatch");
    for (std::size_t i = 0; i < idx.size(); ++i)
      if (idx[i] < 0 || idx[i] >= dims_[i]) throw std::invalid_argument("multi-index out of range");
  }

  void add(const MultiIndex& idx, const Scalar& a) {
    check_index(idx);
    if (a.is_zero()) return;
    auto it = amps_.find(idx);
    if (it == amps_.end()) {
      amps_.emplace(idx, a);
    } else {
      it->second += a;
      if (it->second.is_zero()) amps_.erase(it);
    }
  }

  void set(const MultiIndex& idx, const Scalar& a) {
    check_index(idx);
    if (a.is_zero()) amps_.erase(idx);
    else amps_[idx] = a;
  }

  Scalar at(const MultiIndex& idx) const {
    auto it = amps_.find(idx);
    return it == amps_.end() ? Scalar::zero() : it->second;
  }

  SparseState scaled(const Scalar& c) const {
    SparseState r(dims_);
    if (c.is_zero()) return r;
    for (const auto& [k, a] : amps_) r.amps_.emplace(k, a * c);
    return r;
  }

  friend SparseState operator+(const SparseState& a, const SparseState& b) {
    if (a.dims_ != b.dims_) throw std::invalid_argument("state sum: dimension mismatch");
    SparseState r = a;
    for (const auto& [k, v] : b.amps_) r.add(k, v);
    return r;
  }

  friend bool operator==(const SparseState& a, const SparseState& b) {
    return a.dims_ == b.dims_ && a.amps_ == b.amps_;
  }

  double norm() const {
    double s = 0;
    for (const auto& [k, a] : amps_) {
      double m = a.abs();
      s += m * m;
    }
    return std::sqrt(s);
  }

  // Drop float amplitudes below an absolute threshold (exact values stay).
  void chop(double eps) {
    for (auto it = amps_.begin(); it != amps_.end();) {
      if (!it->second.is_rational() && it->second.abs() < eps) it = amps_.erase(it);
      else ++it;
    }
  }

 private:
  std::vector<int> dims_;
  std::map<MultiIndex, Scalar> amps_;
};

inline SparseState basis_state(std::vector<int> dims, MultiIndex idx) {
  SparseState s(std::move(dims));
  s.set(idx, Scalar::one());
  return s;
}

enum class FuseMode { PerPartyFuse, AppendParties };

// PerPartyFuse: same party count, party dims multiply, fused index
// j = j_a * dim_b + j_b (left factor is the high digit).
// AppendParties: concatenates the party lists.
inline SparseState tensor_product(const SparseState& a, const SparseState& b,
                                  FuseMode mode = FuseMode::PerPartyFuse) {
  if (mode == FuseMode::PerPartyFuse) {
    if (a.parties() != b.parties())
      throw std::invalid_argument("per-party fuse needs equal party counts");
    std::vector<int> dims(a.parties());
    for (int i = 0; i < a.parties(); ++i) dims[i] = a.dims()[i] * b.dims()[i];
    SparseState r(dims);
    for (const auto& [ka, va] : a.amplitudes())
      for (const auto& [kb, vb] : b.amplitudes()) {
        MultiIndex k(a.parties());
        for (int i = 0; i < a.parties(); ++i) k[i] = ka[i] * b.dims()[i] + kb[i];
        r.add(k, va * vb);
      }
    return r;
  }
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  SparseState r(dims);
  for (const auto& [ka, va] : a.amplitudes())
    for (const auto& [kb, vb] : b.amplitudes()) {
      MultiIndex k = ka;
      k.insert(k.end(), kb.begin(), kb.end());
      r.add(k, va * vb);
    }
  return r;
}

// Per-party n-fold fused tensor power; m = 0 gives the scalar unit (all dims 1).
inline SparseState fused_power(const SparseState& s, int m) {
  if (m < 0) throw std::invalid_argument("negative tensor power");
  SparseState unit(std::vector<int>(s.parties(), 1));
  unit.set(MultiIndex(s.parties(), 0), Scalar::one());
  SparseState r = unit;
  for (int i = 0; i < m; ++i) r = tensor_product(r, s, FuseMode::PerPartyFuse);
  return r;
}

// Block direct sum: party dims add, b's indices are offset by a's dims.
inline SparseState direct_sum(const SparseState& a, const SparseState& b) {
  if (a.parties() != b.parties())
    throw std::invalid_argument("direct sum needs equal party counts");
  std::vector<int> dims(a.parties());
  for (int i = 0; i < a.parties(); ++i) dims[i] = a.dims()[i] + b.dims()[i];
  SparseState r(dims);
  for (const auto& [k, v] : a.amplitudes()) r.add(k, v);
  for (const auto& [k, v] : b.amplitudes()) {
    MultiIndex k2(k);
    for (int i = 0; i < a.parties(); ++i) k2[i] += a.dims()[i];
    r.add(k2, v);
  }
  return r;
}

// Gather convention: party i of the result is party perm[i] of the input.
inline SparseState permute_parties(const SparseState& s, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != s.parties())
    throw std::invalid_argument("party permutation arity mismatch");
  std::vector<bool> seen(perm.size(), false);
  for (int p : perm) {
    if (p < 0 || p >= s.parties() || seen[p]) throw std::invalid_argument("not a permutation");
    seen[p] = true;
  }
  std::vector<int> dims(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) dims[i] = s.dims()[perm[i]];
  SparseState r(dims);
  for (const auto& [k, v] : s.amplitudes()) {
    MultiIndex k2(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) k2[i] = k[perm[i]];
    r.add(k2, v);
  }
  return r;
}

inline std::vector<int> inverse_permutation(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
  return inv;
}

// Every party's dimension factors as prod(factors[party]); the same factor
// permutation (gather convention) is applied inside each party. Factor 0 is
// the most significant digit, matching the per-party-fuse index convention.
inline SparseState permute_local_factors(const SparseState& s,
                                         const std::vector<std::vector<int>>& factors,
                                         const std::vector<int>& perm) {
  if (static_cast<int>(factors.size()) != s.parties())
    throw std::invalid_argument("factor shapes arity mismatch");
  std::vector<std::vector<int>> new_factors(factors.size());
  std::vector<int> dims(factors.size());
  for (int p = 0; p < s.parties(); ++p) {
    if (factors[p].size() != perm.size())
      throw std::invalid_argument("factor permutation arity mismatch");
    long prod = 1;
    for (int f : factors[p]) prod *= f;
    if (prod != s.dims()[p]) throw std::invalid_argument("factor shapes do not multiply to dim");
    new_factors[p].resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) new_factors[p][i] = factors[p][perm[i]];
    dims[p] = s.dims()[p];
  }
  SparseState r(dims);
  std::vector<int> digits(perm.size()), nd(perm.size());
  for (const auto& [k, v] : s.amplitudes()) {
    MultiIndex k2(k.size());
    for (int p = 0; p < s.parties(); ++p) {
      int rem = k[p];
      for (int i = static_cast<int>(perm.size()) - 1; i >= 0; --i) {
        digits[i] = rem % factors[p][i];
        rem /= factors[p][i];
      }
      for (std::size_t i = 0; i < perm.size(); ++i) nd[i] = digits[perm[i]];
      int idx = 0;
      for (std::size_t i = 0; i < perm.size(); ++i) idx = idx * new_factors[p][i] + nd[i];
      k2[p] = idx;
    }
    r.add(k2, v);
  }
  return r;
}

// Fuse parties pos and pos+1 into one of dim d_pos * d_{pos+1}.
inline SparseState fuse_adjacent(const SparseState& s, int pos) {
  if (pos < 0 || pos + 1 >= s.parties()) throw std::invalid_argument("fuse position out of range");
  std::vector<int> dims;
  for (int i = 0; i < s.parties(); ++i) {
    if (i == pos) dims.push_back(s.dims()[pos] * s.dims()[pos + 1]);
    else if (i != pos + 1) dims.push_back(s.dims()[i]);
  }
  SparseState r(dims);
  for (const auto& [k, v] : s.amplitudes()) {
    MultiIndex k2;
    for (int i = 0; i < s.parties(); ++i) {
      if (i == pos) k2.push_back(k[pos] * s.dims()[pos + 1] + k[pos + 1]);
      else if (i != pos + 1) k2.push_back(k[i]);
    }
    r.add(k2, v);
  }
  return r;
}

struct ScaleMatch {
  bool equal = false;
  Scalar scale;      // a ~= scale * b
  double residual = 0.0;
};

// Projective comparison a =? lambda * b. Exact when both sides are rational,
// relative L2 residual against tol otherwise.
inline ScaleMatch equal_up_to_scale(const SparseState& a, const SparseState& b, double tol = 1e-9) {
  if (a.dims() != b.dims()) throw std::invalid_argument("equal_up_to_scale: dimension mismatch");
  if (b.empty()) throw std::invalid_argument("equal_up_to_scale: zero reference state");
  ScaleMatch m;
  // pivot on b's largest amplitude
  const MultiIndex* pivot = nullptr;
  double best = -1;
  for (const auto& [k, v] : b.amplitudes()) {
    double mag = v.abs();
    if (mag > best) { best = mag; pivot = &k; }
  }
  Scalar av = a.at(*pivot);
  if (av.is_zero()) {
    if (a.empty()) { m.equal = true; m.scale = Scalar::zero(); return m; }
    m.residual = 1.0;
    return m;
  }
  m.scale = av / b.at(*pivot);
  if (a.all_rational() && b.all_rational() && m.scale.is_rational()) {
    m.equal = (a == b.scaled(m.scale));
    m.residual = m.equal ? 0.0 : 1.0;
    return m;
  }
  SparseState diff = a + b.scaled(-m.scale);
  double ref = b.scaled(m.scale).norm();
  m.residual = ref == 0 ? diff.norm() : diff.norm() / ref;
  m.equal = m.residual <= tol;
  return m;
}

}  // namespace symrank
