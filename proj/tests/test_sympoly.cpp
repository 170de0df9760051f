#include <gtest/gtest.h>

#include <random>

#include "symrank/decompositions.hpp"
#include "symrank/polynomial.hpp"
#include "symrank/waring.hpp"

using namespace symrank;

namespace {

Scalar q(long num, long den = 1) { return Scalar(make_rational(num, den)); }

SparseState w3() { return dicke_state({2, 1}); }

}  // namespace

TEST(Polynomial, multinomial_and_binomial) {
  EXPECT_EQ(multinomial(3, {2, 1, 0}), make_rational(3));
  EXPECT_EQ(multinomial(4, {2, 2}), make_rational(6));
  EXPECT_EQ(multinomial(3, {1, 1, 1}), make_rational(6));
  EXPECT_EQ(multinomial(5, {5}), make_rational(1));
  EXPECT_THROW(multinomial(3, {2, 2}), std::invalid_argument);
  EXPECT_THROW(multinomial(3, {-1, 4}), std::invalid_argument);
  EXPECT_EQ(binomial(5, 2), make_rational(10));
  EXPECT_EQ(binomial(3, 5), make_rational(0));
  EXPECT_EQ(binomial(3, -1), make_rational(0));
}

TEST(Polynomial, expand_power_square) {
  HomogeneousPolynomial p = expand_power({q(1), q(1)}, 2);
  EXPECT_EQ(p.at({2, 0}), q(1));
  EXPECT_EQ(p.at({1, 1}), q(2));
  EXPECT_EQ(p.at({0, 2}), q(1));
  EXPECT_EQ(p.term_count(), 3u);
}

TEST(Polynomial, expand_power_cube_signs) {
  HomogeneousPolynomial p = expand_power({q(1), q(-1), q(1)}, 3);
  EXPECT_EQ(p.at({1, 1, 1}), q(-6));
  EXPECT_EQ(p.at({3, 0, 0}), q(1));
  EXPECT_EQ(p.at({0, 2, 1}), q(3));
  EXPECT_EQ(p.at({0, 3, 0}), q(-1));
  HomogeneousPolynomial zero = expand_power({q(0), q(0)}, 2);
  EXPECT_EQ(zero.term_count(), 0u);
}

TEST(Polynomial, product_and_evaluate) {
  HomogeneousPolynomial s = poly_of_form({q(1), q(1)});
  HomogeneousPolynomial d = poly_of_form({q(1), q(-1)});
  HomogeneousPolynomial p = s * d;
  EXPECT_EQ(p.at({2, 0}), q(1));
  EXPECT_EQ(p.at({0, 2}), q(-1));
  EXPECT_EQ(p.at({1, 1}), Scalar::zero());
  HomogeneousPolynomial sq = expand_power({q(1), q(1)}, 2);
  Scalar v = sq.evaluate({q(3), q(2)});
  EXPECT_EQ(v, q(25));
}

TEST(Polynomial, substitute_difference_of_squares) {
  HomogeneousPolynomial p(2, 2);
  p.add({1, 1}, q(1));
  HomogeneousPolynomial r = substitute(p, {{q(1), q(1)}, {q(1), q(-1)}});
  EXPECT_EQ(r.at({2, 0}), q(1));
  EXPECT_EQ(r.at({0, 2}), q(-1));
  EXPECT_EQ(r.term_count(), 2u);
  EXPECT_THROW(substitute(p, {{q(1), q(1)}}), std::invalid_argument);
}

TEST(Polynomial, monomials_of_degree_order) {
  auto ms = monomials_of_degree(3, 2);
  ASSERT_EQ(ms.size(), 6u);
  EXPECT_EQ(ms.front(), (ExponentVec{0, 0, 2}));
  EXPECT_EQ(ms.back(), (ExponentVec{2, 0, 0}));
  EXPECT_EQ(monomials_of_degree(1, 5).size(), 1u);
  EXPECT_EQ(monomials_of_degree(4, 0).size(), 1u);
}

TEST(EvaluationMap, dicke_state_words) {
  SparseState w = w3();
  ASSERT_EQ(w.dims(), (std::vector<int>{2, 2, 2}));
  EXPECT_EQ(w.nonzeros(), 3u);
  EXPECT_EQ(w.at({0, 0, 1}), q(1));
  EXPECT_EQ(w.at({0, 1, 0}), q(1));
  EXPECT_EQ(w.at({1, 0, 0}), q(1));
  EXPECT_TRUE(is_symmetric_state(w));
  EXPECT_THROW(dicke_state({0, 0}), std::invalid_argument);
}

TEST(EvaluationMap, w3_image) {
  HomogeneousPolynomial p = evaluation_image(w3());
  EXPECT_EQ(p.term_count(), 1u);
  EXPECT_EQ(p.at({2, 1}), q(3));
}

// Fused square of the W state: image is 6 x0 x1 x2 + 3 x0^2 x3 in the
// tensor-digit variables of the dim-4 fused party.
TEST(EvaluationMap, w3_fused_square_image) {
  SparseState sq = tensor_product(w3(), w3());
  HomogeneousPolynomial h = evaluation_image(sq);
  EXPECT_EQ(h.term_count(), 2u);
  EXPECT_EQ(h.at({1, 1, 1, 0}), q(6));
  EXPECT_EQ(h.at({2, 0, 0, 1}), q(3));
}

TEST(EvaluationMap, poly_state_round_trips) {
  SparseState w = w3();
  HomogeneousPolynomial p = poly_from_state(w);
  EXPECT_EQ(p.at({2, 1}), q(3));
  EXPECT_EQ(state_from_poly(p), w);

  HomogeneousPolynomial g(2, 2);
  g.add({2, 0}, q(5));
  g.add({1, 1}, q(-2));
  g.add({0, 2}, q(1));
  SparseState s = state_from_poly(g);
  EXPECT_EQ(s.at({0, 0}), q(5));
  EXPECT_EQ(s.at({0, 1}), q(-1));
  EXPECT_EQ(s.at({1, 0}), q(-1));
  EXPECT_EQ(s.at({1, 1}), q(1));
  EXPECT_EQ(poly_from_state(s), g);
}

TEST(EvaluationMap, poly_from_state_rejects_asymmetric) {
  SparseState s({2, 2});
  s.set({0, 1}, q(1));
  EXPECT_THROW(poly_from_state(s), std::invalid_argument);
  SparseState uneven({2, 3});
  uneven.set({0, 0}, q(1));
  EXPECT_THROW(evaluation_image(uneven), std::invalid_argument);
}

TEST(Fischer, three_variable_product) {
  SymmetricDecomposition dec = fischer_decompose({1, 1, 1});
  ASSERT_EQ(dec.rank(), 4);
  EXPECT_TRUE(dec.all_rational());
  for (const auto& t : dec.terms) {
    Rational w = t.weight.rational();
    EXPECT_TRUE(w == make_rational(1, 24) || w == make_rational(-1, 24));
  }
  HomogeneousPolynomial target(3, 3);
  target.add({1, 1, 1}, q(1));
  VerifyResult v = verify_waring(dec, target);
  EXPECT_TRUE(v.ok);
  EXPECT_TRUE(v.exact);
  EXPECT_THROW(fischer_decompose({2, 1}), std::invalid_argument);
  EXPECT_THROW(fischer_decompose({0, 0}), std::invalid_argument);
}

TEST(BinaryMonomial, rational_special_cases) {
  SymmetricDecomposition pure = binary_monomial_decompose(1, 0);
  ASSERT_EQ(pure.rank(), 1);
  EXPECT_EQ(pure.terms[0].weight, q(1));

  SymmetricDecomposition xy = binary_monomial_decompose(1, 1);
  ASSERT_EQ(xy.rank(), 2);
  EXPECT_EQ(xy.terms[0].weight, q(1, 4));
  EXPECT_EQ(xy.terms[1].weight, q(-1, 4));
  HomogeneousPolynomial txy(2, 2);
  txy.add({1, 1}, q(1));
  EXPECT_TRUE(verify_waring(xy, txy).exact);
  EXPECT_TRUE(verify_waring(xy, txy).ok);

  SymmetricDecomposition xxy = binary_monomial_decompose(2, 1);
  ASSERT_EQ(xxy.rank(), 3);
  EXPECT_TRUE(xxy.all_rational());
  EXPECT_EQ(xxy.terms[0].weight, q(1, 6));
  EXPECT_EQ(xxy.terms[1].weight, q(-1, 6));
  EXPECT_EQ(xxy.terms[2].weight, q(-1, 3));
  HomogeneousPolynomial txxy(2, 3);
  txxy.add({2, 1}, q(1));
  EXPECT_TRUE(verify_waring(xxy, txxy).ok);
  EXPECT_TRUE(verify_waring(xxy, txxy).exact);
}

TEST(BinaryMonomial, roots_of_unity_case) {
  SymmetricDecomposition dec = binary_monomial_decompose(3, 2);
  ASSERT_EQ(dec.rank(), 4);
  EXPECT_FALSE(dec.all_rational());
  HomogeneousPolynomial target(2, 5);
  target.add({3, 2}, q(1));
  VerifyResult v = verify_waring(dec, target);
  EXPECT_TRUE(v.ok);
  EXPECT_LT(v.residual, 1e-9);
  EXPECT_THROW(binary_monomial_decompose(1, 2), std::invalid_argument);
  EXPECT_THROW(binary_monomial_decompose(0, 0), std::invalid_argument);
}

TEST(MonomialDecompose, one_repeated_variable) {
  // m = 2 with two squarefree variables routes through binary(2,2), which
  // uses cube roots of unity, so the certificate is complex.
  SymmetricDecomposition dec = monomial_decompose({2, 1, 1});
  EXPECT_EQ(dec.rank(), 6);
  EXPECT_FALSE(dec.all_rational());
  HomogeneousPolynomial target(3, 4);
  target.add({2, 1, 1}, q(1));
  VerifyResult v = verify_waring(dec, target, 1e-9);
  EXPECT_TRUE(v.ok);
  EXPECT_LT(v.residual, 1e-9);
}

TEST(MonomialDecompose, shapes) {
  EXPECT_EQ(monomial_decompose({0, 3}).rank(), 1);
  EXPECT_EQ(monomial_decompose({1, 1, 0, 1}).rank(), 4);
  EXPECT_EQ(monomial_decompose({3, 1}).rank(), 4);
  EXPECT_THROW(monomial_decompose({2, 2}), std::invalid_argument);
  EXPECT_THROW(monomial_decompose({0, 0}), std::invalid_argument);
}

TEST(Symmetrize, two_party_product) {
  ProductDecomposition p;
  p.dims = {2, 2};
  p.terms.push_back({q(1), {{q(1), q(0)}, {q(0), q(1)}}});
  SymmetricDecomposition dec = symmetrize_decomposition(p);
  EXPECT_LE(dec.rank(), 2);
  HomogeneousPolynomial target(2, 2);
  target.add({1, 1}, q(1));
  VerifyResult v = verify_waring(dec, target);
  EXPECT_TRUE(v.ok);
  EXPECT_TRUE(v.exact);
}

TEST(Symmetrize, random_rational_products) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3), nd(1, 4), rd(1, 3), dd(2, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const int N = nd(rng), r = rd(rng), d = dd(rng);
    ProductDecomposition p;
    p.dims.assign(N, d);
    for (int t = 0; t < r; ++t) {
      ProductTerm term;
      int wn = num(rng);
      term.weight = q(wn == 0 ? 1 : wn, den(rng));
      for (int alpha = 0; alpha < N; ++alpha) {
        std::vector<Scalar> v(d);
        bool nonzero = false;
        for (int i = 0; i < d; ++i) {
          v[i] = q(num(rng), den(rng));
          nonzero = nonzero || !v[i].is_zero();
        }
        if (!nonzero) v[0] = q(1);
        term.vectors.push_back(v);
      }
      p.terms.push_back(term);
    }
    SymmetricDecomposition dec = symmetrize_decomposition(p);
    EXPECT_LE(dec.rank(), (1 << (N - 1)) * r);
    VerifyResult v = verify_waring(dec, evaluation_image(p.expand()));
    EXPECT_TRUE(v.ok);
    EXPECT_TRUE(v.exact);
  }
}

TEST(Verify, rel_distance_and_shape_guards) {
  HomogeneousPolynomial p = expand_power({q(1), q(2)}, 2);
  EXPECT_EQ(rel_poly_distance(p, p), 0.0);
  EXPECT_GT(rel_poly_distance(p.scaled(q(2)), p), 0.5);
  SymmetricDecomposition dec;
  dec.vars = 2;
  dec.degree = 3;
  HomogeneousPolynomial wrong(2, 2);
  wrong.add({1, 1}, q(1));
  EXPECT_THROW(verify_waring(dec, wrong), std::invalid_argument);
}
