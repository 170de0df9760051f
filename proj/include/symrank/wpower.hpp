#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "symrank/waring.hpp"

namespace symrank {

// S(n,k) by the standard recurrence; k > n yields 0 by convention.
inline mpz_class stirling2(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("stirling2 needs n, k >= 0");
  if (k > n) return 0;
  std::vector<mpz_class> row(k + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, k); j >= 1; --j) row[j] = j * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[k];
}

// Closed form (1/k!) sum_i (-1)^{k-i} C(k,i) i^n, used to cross-check the
// recurrence.
inline mpz_class stirling2_closed(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("stirling2 needs n, k >= 0");
  if (k > n) return 0;
  if (k == 0) return n == 0 ? 1 : 0;
  mpz_class acc = 0;
  for (int i = 0; i <= k; ++i) {
    mpz_class c, p;
    mpz_bin_uiui(c.get_mpz_t(), k, i);
    mpz_ui_pow_ui(p.get_mpz_t(), i, n);
    if ((k - i) % 2) acc -= c * p;
    else acc += c * p;
  }
  mpz_class f = factorial_mpz(k), q;
  mpz_divexact(q.get_mpz_t(), acc.get_mpz_t(), f.get_mpz_t());
  return q;
}

// All set partitions of {0..n-1} with at most max_blocks blocks, enumerated in
// restricted-growth-string order. Each partition lists its blocks in order of
// first appearance; each block lists its slots ascending.
inline std::vector<std::vector<std::vector<int>>> set_partitions(int n, int max_blocks) {
  if (n < 1) throw std::invalid_argument("set_partitions needs n >= 1");
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<int> rgs(n, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      std::vector<std::vector<int>> blocks(used);
      for (int s = 0; s < n; ++s) blocks[rgs[s]].push_back(s);
      out.push_back(std::move(blocks));
      return;
    }
    int cap = std::min(used, max_blocks - 1);
    for (int b = 0; b <= cap; ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
  return out;
}

inline SparseState w_state(int N) {
  if (N < 2) throw std::invalid_argument("w_state needs N >= 2");
  SparseState s(std::vector<int>(N, 2));
  for (int p = 0; p < N; ++p) {
    MultiIndex w(N, 0);
    w[p] = 1;
    s.set(w, Scalar::one());
  }
  return s;
}

inline SparseState ghz_state(int N, int d) {
  if (N < 2 || d < 1) throw std::invalid_argument("ghz_state needs N >= 2, d >= 1");
  SparseState s(std::vector<int>(N, d));
  for (int i = 0; i < d; ++i) s.set(MultiIndex(N, i), Scalar::one());
  return s;
}

// Variable index for a block of copy slots: slot s (0-based) contributes bit
// n-1-s, so the first copy is the most significant digit, matching the
// per-party fuse convention.
inline int block_variable(const std::vector<int>& block, int n) {
  int mask = 0;
  for (int s : block) mask |= 1 << (n - 1 - s);
  return mask;
}

struct WPowerEntry {
  int k = 0;                            // number of blocks
  std::vector<std::vector<int>> partition;
  ExponentVec exps;                     // x0^{N-k} * prod over blocks
};

struct WPowerExpansion {
  int N = 0, n = 0;
  std::vector<WPowerEntry> entries;

  // Induced polynomial: each monomial carries the multinomial coefficient of
  // its exponent vector, which is what the evaluation image of the fused
  // power produces (amplitudes are all 1).
  HomogeneousPolynomial polynomial() const {
    HomogeneousPolynomial p(1 << n, N);
    for (const auto& e : entries) p.add(e.exps, Scalar(multinomial(N, e.exps)));
    return p;
  }
};

namespace detail {

inline void wpower_guard(int N, int n, int max_copies) {
  if (N < 2 || n < 1) throw std::invalid_argument("need N >= 2, n >= 1");
  if (n > max_copies) throw std::invalid_argument("resource guard: copies exceed limit");
  mpz_class monomials = 0;
  for (int k = 1; k <= std::min(N, n); ++k) monomials += stirling2(n, k);
  if (monomials > 1000000) throw std::invalid_argument("resource guard: expansion too large");
}

}  // namespace detail

// The fused |W_N>^{xn} has one monomial per set partition of the n copies
// into k <= min(N,n) nonempty blocks: x0^{N-k} times one variable per block.
inline WPowerExpansion wpower_expansion(int N, int n, int max_copies = 12) {
  detail::wpower_guard(N, n, max_copies);
  WPowerExpansion ex;
  ex.N = N;
  ex.n = n;
  const int d = 1 << n;
  for (auto& blocks : set_partitions(n, std::min(N, n))) {
    WPowerEntry e;
    e.k = static_cast<int>(blocks.size());
    e.exps.assign(d, 0);
    e.exps[0] = N - e.k;
    for (const auto& b : blocks) e.exps[block_variable(b, n)] = 1;
    e.partition = std::move(blocks);
    ex.entries.push_back(std::move(e));
  }
  return ex;
}

// Generic certificate size: sum_k S(n,k) (1 + max{N-k, k}) 2^{k-1}.
inline mpz_class wn_upper_bound(int N, int n) {
  if (N < 2 || n < 1) throw std::invalid_argument("need N >= 2, n >= 1");
  mpz_class total = 0;
  for (int k = 1; k <= std::min(N, n); ++k)
    total += stirling2(n, k) * (1 + std::max(N - k, k)) * (mpz_class(1) << (k - 1));
  return total;
}

inline mpz_class wn_lower_bound(int N, int n) {
  if (N < 2 || n < 1) throw std::invalid_argument("need N >= 2, n >= 1");
  return (mpz_class(N) - 1) * (mpz_class(1) << n) - N + 2;
}

// Concatenation of per-monomial certificates, scaled by the monomial
// coefficients of the fused-power polynomial; verified against it.
inline SymmetricDecomposition wn_constructive_decomposition(int N, int n, int max_copies = 12) {
  WPowerExpansion ex = wpower_expansion(N, n, max_copies);
  const int d = 1 << n;
  SymmetricDecomposition dec;
  dec.vars = d;
  dec.degree = N;
  for (const auto& entry : ex.entries) {
    SymmetricDecomposition part = monomial_decompose(entry.exps);
    Scalar coeff(multinomial(N, entry.exps));
    for (auto& t : part.terms) dec.terms.push_back({t.weight * coeff, std::move(t.form)});
  }
  detail::check_certificate(dec, ex.polynomial());
  return dec;
}

struct BoundReport {
  int N = 0, n = 0;
  mpz_class lower, constructive_upper, generic_upper;
  double nth_root = 0;  // constructive_upper^{1/n}

  bool consistent() const { return lower <= constructive_upper && constructive_upper <= generic_upper; }
};

inline BoundReport bound_report(int N, int n, int max_copies = 12) {
  BoundReport r;
  r.N = N;
  r.n = n;
  r.lower = wn_lower_bound(N, n);
  r.constructive_upper = wn_constructive_decomposition(N, n, max_copies).rank();
  r.generic_upper = wn_upper_bound(N, n);
  r.nth_root = std::pow(r.constructive_upper.get_d(), 1.0 / n);
  return r;
}

struct NthRootBound {
  int n = 0;
  double value = 0;
};

// Minimizes constructive_upper(N,n)^{1/n} over 1 <= n <= n_max. An override
// injects an externally certified term count for a given n (e.g. a numeric
// certificate beating the constructive assembly).
inline NthRootBound best_nth_root_bound(int N, int n_max,
                                        const std::map<int, long>& overrides = {},
                                        int max_copies = 12) {
  if (n_max < 1) throw std::invalid_argument("need n_max >= 1");
  NthRootBound best;
  for (int n = 1; n <= n_max; ++n) {
    double count;
    auto it = overrides.find(n);
    if (it != overrides.end()) count = static_cast<double>(it->second);
    else count = wn_constructive_decomposition(N, n, max_copies).rank();
    double value = std::pow(count, 1.0 / n);
    if (best.n == 0 || value < best.value) best = {n, value};
  }
  return best;
}

// Certificate for the two-level Dicke state D(m,n): the binary decomposition
// of x0^m x1^n scaled by the polynomial's multinomial coefficient. m+1 terms.
inline SymmetricDecomposition dicke_decomposition(int m, int n) {
  if (m < n) throw std::invalid_argument("dicke_decomposition needs m >= n (swap levels)");
  SymmetricDecomposition dec = binary_monomial_decompose(m, n);
  Scalar coeff(binomial(m + n, n));
  for (auto& t : dec.terms) t.weight = t.weight * coeff;
  detail::check_certificate(dec, evaluation_image(dicke_state({m, n})));
  return dec;
}

struct W3CubedReduction {
  HomogeneousPolynomial h;                       // evaluation image of the fused cube
  Scalar scale;                                  // blocks sum to scale * h
  std::array<HomogeneousPolynomial, 4> blocks;   // four rank-search targets
  std::vector<LinearForm> forward;               // coordinate i of (x0,y1,y2,z3,y4,z5,z6,x7) in x
  std::vector<LinearForm> inverse;               // x_i in the new coordinates
};

// The cubic reduction of h(W3^x3) in 8 variables: three blocks of the shape
// x0*y*z - y^3 plus a cube-and-monomial tail. The y's are the standard signed
// pair sums; the z's used in the blocks are the half-sum substitutions scaled
// by 24, which is what makes the four blocks add up to exactly 4h.
inline W3CubedReduction w3_cubed_reduction() {
  W3CubedReduction r;
  r.h = evaluation_image(fused_power(w_state(3), 3));
  r.scale = Scalar(4);

  const int d = 8;
  auto unit = [&](int i) {
    LinearForm f(d, Scalar::zero());
    f[i] = Scalar::one();
    return f;
  };
  auto form = [&](std::initializer_list<std::pair<int, Rational>> entries) {
    LinearForm f(d, Scalar::zero());
    for (const auto& [i, c] : entries) f[i] = Scalar(c);
    return f;
  };
  Rational half(1, 2);

  LinearForm y1 = form({{1, 1}, {2, 1}, {4, -1}});
  LinearForm y2 = form({{1, 1}, {2, -1}, {4, 1}});
  LinearForm y4 = form({{1, -1}, {2, 1}, {4, 1}});
  LinearForm z3 = form({{3, half}, {5, half}});
  LinearForm z5 = form({{3, half}, {6, half}});
  LinearForm z6 = form({{5, half}, {6, half}});

  r.forward = {unit(0), y1, y2, z3, y4, z5, z6, unit(7)};
  r.inverse = {unit(0),
               form({{1, half}, {2, half}}),
               form({{1, half}, {4, half}}),
               form({{3, 1}, {5, 1}, {6, -1}}),
               form({{2, half}, {4, half}}),
               form({{3, 1}, {5, -1}, {6, 1}}),
               form({{3, -1}, {5, 1}, {6, 1}}),
               unit(7)};

  auto scaled_form = [](const LinearForm& f, const Scalar& c) {
    LinearForm g = f;
    for (auto& x : g) x = x * c;
    return g;
  };
  Scalar z_scale(24);
  LinearForm Z3 = scaled_form(z3, z_scale), Z5 = scaled_form(z5, z_scale),
             Z6 = scaled_form(z6, z_scale);

  auto block = [&](const LinearForm& y, const LinearForm& Z) {
    HomogeneousPolynomial p = poly_of_form(unit(0)) * poly_of_form(y) * poly_of_form(Z);
    return p + expand_power(y, 3).scaled(Scalar(-1));
  };
  r.blocks[0] = block(y1, Z6);
  r.blocks[1] = block(y2, Z5);
  r.blocks[2] = block(y4, Z3);
  LinearForm ysum(d, Scalar::zero());
  for (int i = 0; i < d; ++i) ysum[i] = y1[i] + y2[i] + y4[i];
  HomogeneousPolynomial tail(d, 3);
  tail.add({2, 0, 0, 0, 0, 0, 0, 1}, Scalar(12));
  r.blocks[3] = expand_power(ysum, 3) + tail;

  HomogeneousPolynomial sum = r.blocks[0] + r.blocks[1] + r.blocks[2] + r.blocks[3];
  if (!(sum == r.h.scaled(r.scale)))
    throw std::logic_error("cubic reduction identity failed its exact check");
  return r;
}

}  // namespace symrank
