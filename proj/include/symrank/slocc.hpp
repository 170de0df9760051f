#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "symrank/local_ops.hpp"
#include "symrank/wpower.hpp"

namespace symrank {

// Certificate that apply_local(ops, source) == scale * target.
struct ConversionWitness {
  SparseState source;
  SparseState target;
  LocalOperatorSet ops;
  Scalar scale = Scalar::one();
};

inline VerifyResult verify_witness(const ConversionWitness& w, double tol = 1e-8) {
  SparseState lhs = apply_local(w.ops, w.source);
  SparseState rhs = w.target.scaled(w.scale);
  VerifyResult r;
  r.exact = lhs.all_rational() && rhs.all_rational();
  if (r.exact) {
    r.ok = lhs == rhs;
    r.residual = r.ok ? 0.0 : 1.0;
    return r;
  }
  double denom = rhs.norm();
  double diff = (lhs + rhs.scaled(Scalar(-1))).norm();
  r.residual = denom > 0 ? diff / denom : diff;
  r.ok = r.residual <= tol;
  return r;
}

inline ConversionWitness make_witness(SparseState source, SparseState target,
                                      LocalOperatorSet ops, Scalar scale = Scalar::one(),
                                      double tol = 1e-8) {
  ConversionWitness w{std::move(source), std::move(target), std::move(ops), scale};
  VerifyResult v = verify_witness(w, tol);
  if (!v.ok) throw std::runtime_error("conversion witness failed verification");
  return w;
}

// A weighted Waring decomposition is the same data as a product decomposition
// of the corresponding symmetric state: each form becomes a repeated vector.
inline ProductDecomposition symmetric_to_product(const SymmetricDecomposition& dec) {
  if (dec.degree < 1) throw std::invalid_argument("need degree >= 1");
  ProductDecomposition p;
  p.dims.assign(dec.degree, dec.vars);
  for (const auto& t : dec.terms) {
    ProductTerm pt;
    pt.weight = t.weight;
    pt.vectors.assign(dec.degree, t.form);
    p.terms.push_back(std::move(pt));
  }
  return p;
}

// Turns an r-term product certificate for `target` into local operators
// mapping GHZ(P, r) onto the target: party a's operator has the term vectors
// as columns, with the weights folded into party 0.
inline ConversionWitness ghz_to_state_operators(const ProductDecomposition& cert,
                                                const SparseState& target,
                                                double tol = 1e-8) {
  VerifyResult v = verify_product(cert, target, tol);
  if (!v.ok) throw std::invalid_argument("certificate does not verify against target");
  int P = static_cast<int>(cert.dims.size());
  int r = static_cast<int>(cert.terms.size());
  if (P < 2 || r < 1) throw std::invalid_argument("need >= 2 parties and >= 1 term");
  LocalOperatorSet ops;
  for (int a = 0; a < P; ++a) {
    Matrix m(cert.dims[a], r);
    for (int t = 0; t < r; ++t) {
      for (int i = 0; i < cert.dims[a]; ++i) {
        Scalar e = cert.terms[t].vectors[a][i];
        if (a == 0) e = e * cert.terms[t].weight;
        m.at(i, t) = e;
      }
    }
    ops.push_back(std::move(m));
  }
  return make_witness(ghz_state(P, r), target, std::move(ops), Scalar::one(), tol);
}

inline Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  return m;
}

// Combines witnesses on the direct sum of their sources/targets. The second
// witness's party-0 block absorbs the scale ratio so one overall scale works.
inline ConversionWitness direct_sum_witness(const ConversionWitness& w1,
                                            const ConversionWitness& w2,
                                            double tol = 1e-8) {
  if (w1.ops.size() != w2.ops.size()) throw std::invalid_argument("party count mismatch");
  Scalar ratio = w1.scale * inv(w2.scale);
  LocalOperatorSet ops;
  for (size_t a = 0; a < w1.ops.size(); ++a) {
    Matrix second = w2.ops[a];
    if (a == 0) {
      for (int i = 0; i < second.rows(); ++i)
        for (int j = 0; j < second.cols(); ++j) second.at(i, j) = second.at(i, j) * ratio;
    }
    ops.push_back(block_diag(w1.ops[a], second));
  }
  return make_witness(direct_sum(w1.source, w2.source), direct_sum(w1.target, w2.target),
                      std::move(ops), w1.scale, tol);
}

// Merges the first two parties of D(m,n) down to D(m,n-1): the fused pair is
// projected by [0 1/2 1/2 0; 0 0 0 1], which is exact at every (m,n).
inline ConversionWitness dicke_merge_witness(int m, int n) {
  if (m < 1 || n < 1 || m < n) throw std::invalid_argument("need m >= n >= 1");
  SparseState source = fuse_adjacent(dicke_state({m, n}), 0);
  SparseState target = dicke_state({m, n - 1});
  Rational half(1, 2);
  Matrix merge(2, 4);
  merge.at(0, 1) = Scalar(half);
  merge.at(0, 2) = Scalar(half);
  merge.at(1, 3) = Scalar::one();
  LocalOperatorSet ops = identity_ops(target.dims());
  ops[0] = merge;
  return make_witness(std::move(source), std::move(target), std::move(ops));
}

// Fused m-th power of GHZ(N,d) is literally GHZ(N,d^m) in the digit
// convention, so the witness is the identity; the equality is still checked.
inline ConversionWitness ghz_power_fusion(int N, int d, int m) {
  if (m < 1 || d < 1) throw std::invalid_argument("need d, m >= 1");
  double dim = std::pow(static_cast<double>(d), m);
  if (dim > 1e6) throw std::invalid_argument("resource guard: fused level too large");
  SparseState source = fused_power(ghz_state(N, d), m);
  SparseState target = ghz_state(N, static_cast<int>(dim + 0.5));
  if (!(source == target)) throw std::logic_error("ghz power fusion identity failed");
  LocalOperatorSet ops = identity_ops(source.dims());
  return make_witness(std::move(source), std::move(target), std::move(ops));
}

// Witness fused (GHZ_N^level)^{xn} -> fused W_N^{xn}: the constructive
// certificate is padded with zero-weight columns up to level^n, turned into
// GHZ operators, and composed with the (identity) power fusion.
inline ConversionWitness w_power_ghz_witness(int N, int n, int level, double tol = 1e-8) {
  SymmetricDecomposition sym = wn_constructive_decomposition(N, n);
  double capacity = std::pow(static_cast<double>(level), n);
  if (level < 2 || capacity < sym.rank() || capacity > 1e6)
    throw std::invalid_argument("level^n must cover the certificate size");

  SparseState target = fused_power(w_state(N), n);
  ProductDecomposition cert = symmetric_to_product(sym);
  ProductTerm pad;
  pad.weight = Scalar::zero();
  pad.vectors.assign(N, LinearForm(1 << n, Scalar::zero()));
  for (auto& v : pad.vectors) v[0] = Scalar::one();
  int total = static_cast<int>(capacity + 0.5);
  while (static_cast<int>(cert.terms.size()) < total) cert.terms.push_back(pad);

  ConversionWitness ghz_w = ghz_to_state_operators(cert, target, tol);
  ConversionWitness fusion = ghz_power_fusion(N, level, n);
  return make_witness(fusion.source, target, ghz_w.ops, Scalar::one(), tol);
}

struct SmloccReport {
  int N = 0;
  int level = 0;                 // GHZ level used per copy
  int capacity = 0;              // level^2
  int cert_terms = 0;            // two-copy certificate size
  int single_copy_rank = 0;      // tensor rank of the single copy target
  int single_copy_capacity = 0;  // largest GHZ level below it
  bool single_copy_possible = false;
  ConversionWitness witness;     // fused (GHZ_N^level)^{x2} -> fused W_N^{x2}
};

// Two copies of GHZ_N^level suffice for two copies of W_N once
// level^2 >= 3N-2, even though one copy can never produce W_N (rank N > N-1).
inline SmloccReport smlocc_w_demo(int N, int level = 0, double tol = 1e-8) {
  if (N < 5)
    throw std::invalid_argument(
        "two-copy conversion needs (N-1)^2 >= 3N-2, which fails below N = 5");
  if (level == 0) level = N - 1;

  SmloccReport rep;
  rep.N = N;
  rep.level = level;
  rep.capacity = level * level;
  rep.cert_terms = 3 * N - 2;
  rep.single_copy_rank = N;
  rep.single_copy_capacity = N - 1;
  rep.single_copy_possible = false;
  rep.witness = w_power_ghz_witness(N, 2, level, tol);
  return rep;
}

// Catalyst sum_{k=1}^{n} psi^{x(n-k)} x phi^{xk} (per-party fused blocks).
inline SparseState build_catalyst(const SparseState& psi, const SparseState& phi, int n) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  if (psi.parties() != phi.parties()) throw std::invalid_argument("party count mismatch");
  std::optional<SparseState> c;
  for (int k = 1; k <= n; ++k) {
    SparseState block = tensor_product(fused_power(psi, n - k), fused_power(phi, k));
    c = c ? direct_sum(*c, block) : block;
  }
  return *c;
}

namespace detail {

// Scatters a block matrix into the (lead x catalyst-block) structure of the
// full party operator.
inline void scatter_block(Matrix& m, const Matrix& b, int blk_in, int blk_out,
                          int dimc_in, int dimc_out, int off_in, int off_out) {
  for (int rr = 0; rr < b.rows(); ++rr) {
    int io = rr / blk_out, jo = rr % blk_out;
    for (int cc = 0; cc < b.cols(); ++cc) {
      const Scalar& e = b.at(rr, cc);
      if (e.is_zero()) continue;
      int ii = cc / blk_in, ji = cc % blk_in;
      m.at(io * dimc_out + off_out + jo, ii * dimc_in + off_in + ji) = e;
    }
  }
}

// Permutation matrix rotating the last digit of a mixed-radix string to the
// front: radices_in = (r_0..r_t), radices_out = (r_t, r_0..r_{t-1}).
inline Matrix rotate_last_to_front(const std::vector<int>& radices_in) {
  int t = static_cast<int>(radices_in.size());
  int dim = 1;
  for (int r : radices_in) dim *= r;
  Matrix p(dim, dim);
  std::vector<int> digits(t);
  for (int in = 0; in < dim; ++in) {
    int rem = in;
    for (int i = t - 1; i >= 0; --i) {
      digits[i] = rem % radices_in[i];
      rem /= radices_in[i];
    }
    int out = digits[t - 1];
    for (int i = 0; i < t - 1; ++i) out = out * radices_in[i] + digits[i];
    p.at(out, in) = Scalar::one();
  }
  return p;
}

inline Matrix scale_party0(Matrix m, const Scalar& factor) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) m.at(i, j) = m.at(i, j) * factor;
  return m;
}

}  // namespace detail

// Exchange catalysis: given a multi-copy witness psi^{xn} -> phi^{xn}, builds
// a witness psi x c -> phi x c for the catalyst c = sum_k psi^{x(n-k)} phi^{xk}.
// Source block k = psi^{x(n-k+1)} phi^{xk} maps to target block k-1 by a digit
// rotation; block 1 = psi^{xn} phi maps to block n = phi^{x(n+1)} through the
// multi-copy witness acting on the first n digits.
inline ConversionWitness catalysis_witness(const SparseState& psi, const SparseState& phi,
                                           int n, const ConversionWitness& mcw,
                                           double tol = 1e-8) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  if (!(mcw.source == fused_power(psi, n)) || !(mcw.target == fused_power(phi, n)))
    throw std::invalid_argument("multi-copy witness does not match psi^{xn} -> phi^{xn}");
  int P = psi.parties();
  SparseState c = build_catalyst(psi, phi, n);
  SparseState source = tensor_product(psi, c);
  SparseState target = tensor_product(phi, c);

  LocalOperatorSet ops;
  for (int a = 0; a < P; ++a) {
    int dpsi = psi.dims()[a], dphi = phi.dims()[a];
    std::vector<int> blk(n + 1), off(n + 2, 0);
    for (int k = 1; k <= n; ++k) {
      blk[k] = 1;
      for (int i = 0; i < n - k; ++i) blk[k] *= dpsi;
      for (int i = 0; i < k; ++i) blk[k] *= dphi;
      off[k + 1] = off[k] + blk[k];
    }
    int dimc = off[n + 1];
    Matrix m(dphi * dimc, dpsi * dimc);

    Matrix b1 = kron(mcw.ops[a], Matrix::identity(dphi));
    if (a == 0) b1 = detail::scale_party0(std::move(b1), inv(mcw.scale));
    detail::scatter_block(m, b1, blk[1], blk[n], dimc, dimc, off[1], off[n]);

    for (int k = 2; k <= n; ++k) {
      std::vector<int> radices(1, dpsi);
      for (int i = 0; i < n - k; ++i) radices.push_back(dpsi);
      for (int i = 0; i < k; ++i) radices.push_back(dphi);
      Matrix rot = detail::rotate_last_to_front(radices);
      detail::scatter_block(m, rot, blk[k], blk[k - 1], dimc, dimc, off[k], off[k - 1]);
    }
    ops.push_back(std::move(m));
  }
  return make_witness(std::move(source), std::move(target), std::move(ops),
                      Scalar::one(), tol);
}

// The two-block catalyst c = phi + psi with a two-copy witness: psi x phi
// swaps into phi x psi, and psi x psi routes through the witness to phi x phi.
inline ConversionWitness catalysis_simple_witness(const SparseState& psi,
                                                  const SparseState& phi,
                                                  const ConversionWitness& mcw,
                                                  double tol = 1e-8) {
  if (!(mcw.source == fused_power(psi, 2)) || !(mcw.target == fused_power(phi, 2)))
    throw std::invalid_argument("need a two-copy witness psi^{x2} -> phi^{x2}");
  int P = psi.parties();
  SparseState c = direct_sum(phi, psi);
  SparseState source = tensor_product(psi, c);
  SparseState target = tensor_product(phi, c);

  LocalOperatorSet ops;
  for (int a = 0; a < P; ++a) {
    int dpsi = psi.dims()[a], dphi = phi.dims()[a];
    int dimc = dphi + dpsi;
    Matrix m(dphi * dimc, dpsi * dimc);

    Matrix swap = detail::rotate_last_to_front({dpsi, dphi});
    detail::scatter_block(m, swap, dphi, dpsi, dimc, dimc, 0, dphi);

    Matrix through = mcw.ops[a];
    if (a == 0) through = detail::scale_party0(std::move(through), inv(mcw.scale));
    detail::scatter_block(m, through, dpsi, dphi, dimc, dimc, dphi, 0);

    ops.push_back(std::move(m));
  }
  return make_witness(std::move(source), std::move(target), std::move(ops),
                      Scalar::one(), tol);
}

// Matrix multiplication tensor <d,d,d> with index conventions
// A = (i,j), B = (j,k), C = (k,i), each flattened row-major.
inline SparseState matmul_tensor(int d) {
  if (d < 1) throw std::invalid_argument("need d >= 1");
  SparseState s({d * d, d * d, d * d});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        s.set({i * d + j, j * d + k, k * d + i}, Scalar::one());
  return s;
}

// Three unnormalized EPR pairs shared around a triangle, with each party's
// two qubits fused: gives a (4,4,4) state with A = (i,k), B = (i,j), C = (j,k).
inline SparseState epr_triangle() {
  SparseState pair({2, 2});
  pair.set({0, 0}, Scalar::one());
  pair.set({1, 1}, Scalar::one());
  SparseState six = tensor_product(tensor_product(pair, pair, FuseMode::AppendParties),
                                   pair, FuseMode::AppendParties);
  six = permute_parties(six, {0, 5, 1, 2, 3, 4});
  SparseState s = fuse_adjacent(six, 0);
  s = fuse_adjacent(s, 1);
  s = fuse_adjacent(s, 2);
  return s;
}

// Party relabeling witness: apply_local(local_ops, permute_parties(source,
// party_perm)) == target, exactly.
struct RelabelWitness {
  SparseState source;
  SparseState target;
  std::vector<int> party_perm;
  LocalOperatorSet local_ops;
};

inline RelabelWitness epr_matmul_relabel() {
  RelabelWitness w;
  w.source = epr_triangle();
  w.target = matmul_tensor(2);
  w.party_perm = {1, 2, 0};
  Matrix swap(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) swap.at(k * 2 + i, i * 2 + k) = Scalar::one();
  w.local_ops = {Matrix::identity(4), Matrix::identity(4), swap};
  SparseState lhs = apply_local(w.local_ops, permute_parties(w.source, w.party_perm));
  if (!(lhs == w.target)) throw std::logic_error("epr relabeling failed its exact check");
  return w;
}

// The classical 7-term rank certificate for <2,2,2>, checked exactly.
inline ProductDecomposition strassen_certificate() {
  ProductDecomposition dec;
  dec.dims = {4, 4, 4};
  const int table[7][3][4] = {
      {{1, 0, 0, 1}, {1, 0, 0, 1}, {1, 0, 0, 1}},
      {{0, 0, 1, 1}, {1, 0, 0, 0}, {0, 1, 0, -1}},
      {{1, 0, 0, 0}, {0, 1, 0, -1}, {0, 0, 1, 1}},
      {{0, 0, 0, 1}, {-1, 0, 1, 0}, {1, 1, 0, 0}},
      {{1, 1, 0, 0}, {0, 0, 0, 1}, {-1, 0, 1, 0}},
      {{-1, 0, 1, 0}, {1, 1, 0, 0}, {0, 0, 0, 1}},
      {{0, 1, 0, -1}, {0, 0, 1, 1}, {1, 0, 0, 0}},
  };
  for (const auto& row : table) {
    ProductTerm t;
    t.weight = Scalar::one();
    for (const auto& vec : row) {
      LinearForm v;
      for (int e : vec) v.push_back(Scalar(Rational(e)));
      t.vectors.push_back(std::move(v));
    }
    dec.terms.push_back(std::move(t));
  }
  VerifyResult v = verify_product(dec, matmul_tensor(2));
  if (!v.ok || !v.exact) throw std::logic_error("rank-7 certificate failed its exact check");
  return dec;
}

// Smallest number of recursion levels at which a rank-7-style split beats a
// target exponent omega with constant c: least n with c * (6/2^omega)^n <= 1.
inline long matmul_threshold(double omega, double c) {
  if (c < 1) throw std::invalid_argument("need c >= 1");
  double gap = std::log2(6.0) - omega;
  if (gap <= 0) throw std::invalid_argument("no crossover: omega >= log2(6)");
  long n = static_cast<long>(std::ceil(std::log2(c) / gap - 1e-12));
  return std::max(1L, n);
}

// Cross term of the elimination lemma, keyed by a permutation of the copy
// slots and a prefix length: the slots perm[0..k-1] carry a W factor, the
// rest stay at |0>.
struct CrossTerm {
  std::vector<int> perm;  // permutation of {0..n-1}
  int k = 0;              // 1 <= k <= n-1
  Scalar c;
};

struct EliminationResult {
  SparseState omega;
  Matrix forward;                      // maps fused W^{xn} to omega at party 0
  Matrix inverse;                      // its inverse, upper unitriangular
  std::vector<Matrix> transvections;   // elementary factors, in application order
  ConversionWitness witness;           // omega -> fused W^{xn}
};

namespace detail {

inline SparseState cross_term_state(int P, int n, unsigned long mask) {
  std::optional<SparseState> s;
  SparseState w = w_state(P);
  SparseState ground(std::vector<int>(P, 2));
  ground.set(MultiIndex(P, 0), Scalar::one());
  for (int slot = 0; slot < n; ++slot) {
    const SparseState& f = (mask >> (n - 1 - slot)) & 1 ? w : ground;
    s = s ? tensor_product(*s, f) : f;
  }
  return *s;
}

}  // namespace detail

// Eliminates the cross terms of omega = W^{xn} + sum c_R X_R with one
// invertible operator at party 0: M = I + sum c_R E_R maps W^{xn} onto omega
// exactly, C = M - I strictly raises digit popcounts (hence is nilpotent), and
// M^{-1} factors into transvections by column elimination in the
// (popcount, value) basis order.
inline EliminationResult lemma_elimination(int N, int n,
                                           const std::vector<CrossTerm>& terms) {
  if (N < 3) throw std::invalid_argument("need N >= 3 (at least two parties)");
  if (n < 2 || n > 8) throw std::invalid_argument("need 2 <= n <= 8");
  const int P = N - 1;
  const int d = 1 << n;
  const unsigned long full = d - 1;

  std::map<unsigned long, Scalar> coeff;
  for (const auto& t : terms) {
    std::vector<int> seen(n, 0);
    if (static_cast<int>(t.perm.size()) != n)
      throw std::invalid_argument("cross term permutation has wrong size");
    for (int v : t.perm) {
      if (v < 0 || v >= n || seen[v]++) throw std::invalid_argument("invalid permutation");
    }
    if (t.k < 1 || t.k >= n) throw std::invalid_argument("need 1 <= k <= n-1");
    unsigned long mask = 0;
    for (int i = 0; i < t.k; ++i) mask |= 1ul << (n - 1 - t.perm[i]);
    auto [it, fresh] = coeff.try_emplace(mask, t.c);
    if (!fresh) it->second = it->second + t.c;
  }
  for (auto it = coeff.begin(); it != coeff.end();)
    it = it->second.is_zero() ? coeff.erase(it) : std::next(it);

  SparseState base = fused_power(w_state(P), n);
  SparseState omega = base;
  Matrix forward = Matrix::identity(d);
  for (const auto& [mask, c] : coeff) {
    omega = omega + detail::cross_term_state(P, n, mask).scaled(c);
    for (unsigned long u = mask;; u = (u - 1) & mask) {
      forward.at(static_cast<int>(u), static_cast<int>(u | (full ^ mask))) =
          forward.at(static_cast<int>(u), static_cast<int>(u | (full ^ mask))) + c;
      if (u == 0) break;
    }
  }

  Matrix inverse = Matrix::identity(d);
  Matrix cpow = Matrix::identity(d);
  Matrix cmat = forward;
  for (int i = 0; i < d; ++i) cmat.at(i, i) = cmat.at(i, i) + Scalar(Rational(-1));
  for (int j = 1; j <= n; ++j) {
    cpow = cpow * cmat;
    Scalar sign = j % 2 ? Scalar(Rational(-1)) : Scalar::one();
    for (int i = 0; i < d; ++i)
      for (int c2 = 0; c2 < d; ++c2)
        if (!cpow.at(i, c2).is_zero())
          inverse.at(i, c2) = inverse.at(i, c2) + sign * cpow.at(i, c2);
  }
  if (!(forward * inverse == Matrix::identity(d)))
    throw std::logic_error("elimination operator inverse check failed");

  std::vector<int> order(d);
  for (int i = 0; i < d; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [](int a, int b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa < pb : a < b;
  });

  Matrix u = inverse;
  std::vector<Matrix> factors;
  for (int oc = 1; oc < d; ++oc) {
    int c2 = order[oc];
    for (int orr = 0; orr < oc; ++orr) {
      int r = order[orr];
      Scalar q = u.at(r, c2);
      if (q.is_zero()) continue;
      Matrix f = Matrix::identity(d);
      f.at(r, c2) = q;
      factors.push_back(std::move(f));
      for (int j = 0; j < d; ++j)
        if (!u.at(c2, j).is_zero()) u.at(r, j) = u.at(r, j) + Scalar(Rational(-1)) * q * u.at(c2, j);
    }
  }
  if (!(u == Matrix::identity(d)))
    throw std::logic_error("transvection elimination did not reach the identity");
  Matrix product = Matrix::identity(d);
  for (const auto& f : factors) product = product * f;
  if (!(product == inverse))
    throw std::logic_error("transvection product check failed");
  std::reverse(factors.begin(), factors.end());

  EliminationResult res;
  res.omega = omega;
  res.forward = forward;
  res.inverse = inverse;
  res.transvections = std::move(factors);
  LocalOperatorSet ops = identity_ops(base.dims());
  ops[0] = res.inverse;
  res.witness = make_witness(omega, base, std::move(ops));
  return res;
}

}  // namespace symrank
