#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "symrank/decompositions.hpp"
#include "symrank/polynomial.hpp"
#include "symrank/state.hpp"

namespace symrank {

// Multilinear evaluation image h(x) = sum_w amp_w * prod_alpha x_{w_alpha}.
// Defined for any state with equal local dims; permutation invariant, so it
// only sees the symmetrization of the input.
inline HomogeneousPolynomial evaluation_image(const SparseState& s) {
  if (s.parties() < 1) throw std::invalid_argument("evaluation image needs >= 1 party");
  const int d = s.dims()[0];
  for (int dd : s.dims())
    if (dd != d) throw std::invalid_argument("evaluation image needs equal local dims");
  HomogeneousPolynomial p(d, s.parties());
  for (const auto& [w, a] : s.amplitudes()) {
    ExponentVec e(d, 0);
    for (int letter : w) ++e[letter];
    p.add(e, a);
  }
  return p;
}

inline bool is_symmetric_state(const SparseState& s) {
  for (int i = 0; i + 1 < s.parties(); ++i) {
    std::vector<int> perm(s.parties());
    for (int j = 0; j < s.parties(); ++j) perm[j] = j;
    std::swap(perm[i], perm[i + 1]);
    if (!(permute_parties(s, perm) == s)) return false;
  }
  return true;
}

// Unnormalized Dicke state: unit amplitude on every distinct permutation of
// the word with j[i] copies of letter i. Parties = sum(j), local dim = len(j).
inline SparseState dicke_state(const ExponentVec& j) {
  const int d = static_cast<int>(j.size());
  int n = 0;
  for (int x : j) {
    if (x < 0) throw std::invalid_argument("negative Dicke multiplicity");
    n += x;
  }
  if (d < 1 || n < 1) throw std::invalid_argument("dicke_state needs d >= 1 and degree >= 1");
  MultiIndex word;
  word.reserve(n);
  for (int letter = 0; letter < d; ++letter)
    for (int c = 0; c < j[letter]; ++c) word.push_back(letter);
  SparseState s(std::vector<int>(n, d));
  do {
    s.set(word, Scalar::one());
  } while (std::next_permutation(word.begin(), word.end()));
  return s;
}

// State -> polynomial along the evaluation map: the coefficient of x^j is the
// multinomial C(N; j) times the amplitude on any one word of type j. With
// this scaling a rank decomposition transfers term by term: sum_t w_t v_t^{xN}
// equals the state iff sum_t w_t (v_t . x)^N equals the polynomial.
inline HomogeneousPolynomial poly_from_state(const SparseState& s) {
  if (s.parties() < 1) throw std::invalid_argument("poly_from_state needs >= 1 party");
  const int d = s.dims()[0];
  for (int dd : s.dims())
    if (dd != d) throw std::invalid_argument("poly_from_state needs equal local dims");
  if (!is_symmetric_state(s)) throw std::invalid_argument("poly_from_state needs a symmetric state");
  return evaluation_image(s);
}

inline SparseState state_from_poly(const HomogeneousPolynomial& h) {
  const int n = h.degree(), d = h.vars();
  if (n < 1) throw std::invalid_argument("state_from_poly needs degree >= 1");
  SparseState s(std::vector<int>(n, d));
  for (const auto& [e, c] : h.terms()) {
    Scalar amp = c / Scalar(multinomial(n, e));
    MultiIndex word;
    word.reserve(n);
    for (int letter = 0; letter < d; ++letter)
      for (int k = 0; k < e[letter]; ++k) word.push_back(letter);
    do {
      s.set(word, amp);
    } while (std::next_permutation(word.begin(), word.end()));
  }
  return s;
}

// x_{i1}...x_{ik} = (1/(2^{k-1} k!)) sum over sign patterns eps of
// (prod eps) (x_{i1} + eps_1 x_{i2} + ... + eps_{k-1} x_{ik})^k.
// Exactly 2^{k-1} rational terms.
inline SymmetricDecomposition fischer_decompose(const ExponentVec& m) {
  const int d = static_cast<int>(m.size());
  std::vector<int> support;
  for (int i = 0; i < d; ++i) {
    if (m[i] != 0 && m[i] != 1) throw std::invalid_argument("fischer needs a squarefree monomial");
    if (m[i] == 1) support.push_back(i);
  }
  const int k = static_cast<int>(support.size());
  if (k < 1) throw std::invalid_argument("fischer needs at least one variable");
  SymmetricDecomposition dec;
  dec.vars = d;
  dec.degree = k;
  Rational base = Rational(1) / (Rational(mpz_class(1) << (k - 1)) * Rational(factorial_mpz(k)));
  for (long mask = 0; mask < (1L << (k - 1)); ++mask) {
    LinearForm f(d, Scalar::zero());
    f[support[0]] = Scalar::one();
    int sign = 1;
    for (int j = 1; j < k; ++j) {
      int eps = (mask >> (j - 1)) & 1 ? -1 : 1;
      sign *= eps;
      f[support[j]] = Scalar(eps);
    }
    dec.terms.push_back({Scalar(Rational(sign) * base), f});
  }
  return dec;
}

// x^a y^b as a sum of a+1 powers of binary forms. Rational certificates are
// emitted whenever they exist at that size ((a,b) with b = 0, a + 1 = 2, or
// the real 3-term identity for (2,1)); otherwise roots of unity of order a+1:
// x^a y^b = (1/((a+1) C(a+b,b))) sum_j w^{-jb} (x + w^j y)^{a+b}.
inline SymmetricDecomposition binary_monomial_decompose(int a, int b) {
  if (a < b) throw std::invalid_argument("binary_monomial_decompose needs a >= b (swap variables)");
  if (b < 0 || a < 1) throw std::invalid_argument("binary_monomial_decompose needs a >= 1, b >= 0");
  SymmetricDecomposition dec;
  dec.vars = 2;
  dec.degree = a + b;
  auto S = [](long p, long q) { return Scalar(make_rational(p, q)); };
  if (b == 0) {
    dec.terms.push_back({Scalar::one(), {Scalar::one(), Scalar::zero()}});
    return dec;
  }
  if (a == 1 && b == 1) {
    dec.terms.push_back({S(1, 4), {Scalar(1), Scalar(1)}});
    dec.terms.push_back({S(-1, 4), {Scalar(1), Scalar(-1)}});
    return dec;
  }
  if (a == 2 && b == 1) {
    dec.terms.push_back({S(1, 6), {Scalar(1), Scalar(1)}});
    dec.terms.push_back({S(-1, 6), {Scalar(1), Scalar(-1)}});
    dec.terms.push_back({S(-1, 3), {Scalar(0), Scalar(1)}});
    return dec;
  }
  Rational denom = Rational(a + 1) * binomial(a + b, b);
  Scalar inv_denom = Scalar(Rational(1) / denom);
  const double theta = 2.0 * std::numbers::pi / (a + 1);
  for (int j = 0; j <= a; ++j) {
    Complex w = std::polar(1.0, -theta * j * b);
    Complex root = std::polar(1.0, theta * j);
    dec.terms.push_back({Scalar(w) * inv_denom, {Scalar::one(), Scalar(root)}});
  }
  return dec;
}

namespace detail {

inline void check_certificate(const SymmetricDecomposition& dec,
                              const HomogeneousPolynomial& target) {
  VerifyResult v = verify_waring(dec, target, 1e-9);
  if (!v.ok) throw std::logic_error("internal: decomposition failed its expansion check");
}

}  // namespace detail

// Waring certificate for a monomial with at most one repeated variable:
// x0^m * x_{i1}...x_{ik}. Squarefree monomials go through plain Fischer
// (2^{k-1} terms, always the smaller certificate); a repeated variable routes
// each Fischer term of the squarefree part through the binary decomposition
// of x0^m * ell^k, giving 2^{k-1} (1 + max{m,k}) terms.
inline SymmetricDecomposition monomial_decompose(const ExponentVec& j) {
  const int d = static_cast<int>(j.size());
  int degree = 0, repeated = -1, repeats = 0;
  std::vector<int> singles;
  for (int i = 0; i < d; ++i) {
    if (j[i] < 0) throw std::invalid_argument("negative exponent");
    degree += j[i];
    if (j[i] == 1) singles.push_back(i);
    if (j[i] >= 2) {
      repeated = i;
      ++repeats;
    }
  }
  if (repeats >= 2)
    throw std::invalid_argument("unsupported monomial shape: two or more repeated variables");
  if (degree < 1) throw std::invalid_argument("empty monomial");
  HomogeneousPolynomial target(d, degree);
  target.add(j, Scalar::one());
  if (repeats == 0) {
    SymmetricDecomposition dec = fischer_decompose(j);
    detail::check_certificate(dec, target);
    return dec;
  }
  const int m = j[repeated];
  const int k = static_cast<int>(singles.size());
  SymmetricDecomposition dec;
  dec.vars = d;
  dec.degree = degree;
  if (k == 0) {
    LinearForm f(d, Scalar::zero());
    f[repeated] = Scalar::one();
    dec.terms.push_back({Scalar::one(), f});
    detail::check_certificate(dec, target);
    return dec;
  }
  ExponentVec squarefree(d, 0);
  for (int i : singles) squarefree[i] = 1;
  SymmetricDecomposition outer = fischer_decompose(squarefree);
  SymmetricDecomposition binary = binary_monomial_decompose(std::max(m, k), std::min(m, k));
  for (const auto& ot : outer.terms) {
    for (const auto& bt : binary.terms) {
      // binary symbol x carries the larger exponent; map (x, y) onto
      // (x_repeated, ell) when m >= k and (ell, x_repeated) otherwise.
      const Scalar& cx = m >= k ? bt.form[0] : bt.form[1];
      const Scalar& cl = m >= k ? bt.form[1] : bt.form[0];
      LinearForm f(d, Scalar::zero());
      f[repeated] = cx;
      bool nonzero = !cx.is_zero();
      for (int i = 0; i < d; ++i) {
        if (ot.form[i].is_zero()) continue;
        f[i] += cl * ot.form[i];
        if (!f[i].is_zero()) nonzero = true;
      }
      if (!nonzero) continue;
      dec.terms.push_back({ot.weight * bt.weight, f});
    }
  }
  detail::check_certificate(dec, target);
  return dec;
}

// Fischer identity with vectors in place of variables:
// P_sym(v1 x ... x vN) = (1/(2^{N-1} N!)) sum_eps (prod eps)
// (v1 + eps_2 v2 + ... + eps_N vN)^{xN}. Applied per input term, so the
// output certifies the symmetrization of the input's target with at most
// 2^{N-1} |p| terms, exactly in rational arithmetic.
inline SymmetricDecomposition symmetrize_decomposition(const ProductDecomposition& p) {
  const int N = static_cast<int>(p.dims.size());
  if (N < 1) throw std::invalid_argument("symmetrize needs >= 1 party");
  const int d = p.dims[0];
  for (int dd : p.dims)
    if (dd != d) throw std::invalid_argument("symmetrize needs equal local dims");
  SymmetricDecomposition dec;
  dec.vars = d;
  dec.degree = N;
  Rational base = Rational(1) / (Rational(mpz_class(1) << (N - 1)) * Rational(factorial_mpz(N)));
  for (const auto& t : p.terms) {
    if (static_cast<int>(t.vectors.size()) != N)
      throw std::invalid_argument("product term party count mismatch");
    for (long mask = 0; mask < (1L << (N - 1)); ++mask) {
      LinearForm f(d, Scalar::zero());
      int sign = 1;
      for (int alpha = 0; alpha < N; ++alpha) {
        int eps = alpha == 0 ? 1 : ((mask >> (alpha - 1)) & 1 ? -1 : 1);
        sign *= eps;
        for (int i = 0; i < d; ++i) f[i] += Scalar(eps) * t.vectors[alpha][i];
      }
      bool nonzero = false;
      for (const auto& c : f)
        if (!c.is_zero()) { nonzero = true; break; }
      if (!nonzero) continue;
      dec.terms.push_back({t.weight * Scalar(Rational(sign) * base), f});
    }
  }
  detail::check_certificate(dec, evaluation_image(p.expand()));
  return dec;
}

}  // namespace symrank
