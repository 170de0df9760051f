#include <gtest/gtest.h>

#include <random>

#include "symrank/ranksearch.hpp"
#include "symrank/slocc.hpp"

using namespace symrank;

namespace {

Scalar q(long num, long den = 1) { return Scalar(make_rational(num, den)); }

Matrix random_invertible_2x2(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  for (;;) {
    Matrix m(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m.at(i, j) = q(num(rng), den(rng));
    if (rational_det(m) != 0) return m;
  }
}

}  // namespace

TEST(CpAls, ghz_rank_two_converges) {
  AlsConfig cfg;
  cfg.rank = 2;
  cfg.restarts = 8;
  cfg.tol = 1e-10;
  SearchOutcome out = cp_als(ghz_state(3, 2), cfg);
  EXPECT_LT(out.best_residual, 1e-10);
  ASSERT_TRUE(out.product_certificate.has_value());
  VerifyResult v = verify_product(*out.product_certificate, ghz_state(3, 2), 1e-8);
  EXPECT_TRUE(v.ok);
}

TEST(CpAls, w_rank_three_converges) {
  AlsConfig cfg;
  cfg.rank = 3;
  cfg.restarts = 10;
  cfg.tol = 1e-10;
  SearchOutcome out = cp_als(w_state(3), cfg);
  EXPECT_LT(out.best_residual, 1e-10);
  EXPECT_TRUE(out.product_certificate.has_value());
}

// Border rank signature: at rank 2 the W state admits arbitrarily good
// approximations only with exploding factors, so any restart that reaches a
// good residual must have tripped the degeneracy alarm.
TEST(CpAls, w_rank_two_flags_degeneracy) {
  AlsConfig cfg;
  cfg.rank = 2;
  cfg.restarts = 6;
  cfg.tol = 1e-10;
  SearchOutcome out = cp_als(w_state(3), cfg);
  EXPECT_FALSE(out.product_certificate.has_value());
  for (const auto& s : out.restarts)
    if (s.residual < 1e-3) EXPECT_TRUE(s.degenerate) << "restart " << s.restart;
}

TEST(CpAls, deterministic_for_fixed_seed) {
  AlsConfig cfg;
  cfg.rank = 2;
  cfg.restarts = 4;
  SearchOutcome a = cp_als(ghz_state(3, 2), cfg);
  SearchOutcome b = cp_als(ghz_state(3, 2), cfg);
  EXPECT_EQ(a.best_residual, b.best_residual);
  EXPECT_EQ(a.best_restart, b.best_restart);
  ASSERT_EQ(a.restarts.size(), b.restarts.size());
  for (size_t i = 0; i < a.restarts.size(); ++i)
    EXPECT_EQ(a.restarts[i].residual, b.restarts[i].residual);
}

TEST(CpAls, input_guards) {
  AlsConfig cfg;
  SparseState zero({2, 2});
  EXPECT_THROW(cp_als(zero, cfg), std::invalid_argument);
  SparseState one_party({4});
  one_party.set({0}, q(1));
  EXPECT_THROW(cp_als(one_party, cfg), std::invalid_argument);
  cfg.rank = 0;
  EXPECT_THROW(cp_als(ghz_state(3, 2), cfg), std::invalid_argument);
}

TEST(SymmetricAls, pure_power_rank_one) {
  HomogeneousPolynomial p(2, 3);
  p.add({3, 0}, q(1));
  AlsConfig cfg;
  cfg.rank = 1;
  cfg.restarts = 5;
  cfg.tol = 1e-10;
  SearchOutcome out = symmetric_als(p, cfg);
  EXPECT_LT(out.best_residual, 1e-10);
  ASSERT_TRUE(out.symmetric_certificate.has_value());
  EXPECT_TRUE(verify_waring(*out.symmetric_certificate, p, 1e-8).ok);
}

TEST(SymmetricAls, w_squared_image_rank_seven) {
  HomogeneousPolynomial h = evaluation_image(fused_power(w_state(3), 2));
  AlsConfig cfg;
  cfg.rank = 7;
  cfg.restarts = 20;
  cfg.max_iters = 400;
  cfg.tol = 1e-8;
  SearchOutcome out = symmetric_als(h, cfg);
  EXPECT_LT(out.best_residual, 1e-8);
  ASSERT_TRUE(out.symmetric_certificate.has_value());
  VerifyResult v = verify_waring(*out.symmetric_certificate, h, 1e-6);
  EXPECT_TRUE(v.ok);
}

TEST(Flattening, bound_all_examples) {
  EXPECT_EQ(flattening_bound_all(matmul_tensor(2)), 4);
  EXPECT_EQ(flattening_bound_all(ghz_state(3, 2)), 2);
  EXPECT_EQ(flattening_bound_all(w_state(4)), 2);
  SparseState prod({2, 2, 2});
  prod.set({1, 0, 1}, q(3));
  EXPECT_EQ(flattening_bound_all(prod), 1);
  SparseState single({4});
  single.set({2}, q(1));
  EXPECT_EQ(flattening_bound_all(single), 1);
}

TEST(Hyperdet, canonical_states) {
  HyperdetResult g = hyperdet_222(ghz_state(3, 2));
  EXPECT_EQ(g.delta, q(1));
  EXPECT_EQ(g.label, TripartiteClass::GhzClass);
  EXPECT_EQ(g.rank, 2);

  HyperdetResult w = hyperdet_222(w_state(3));
  EXPECT_TRUE(w.delta.is_zero());
  EXPECT_EQ(w.label, TripartiteClass::WClass);
  EXPECT_EQ(w.rank, 3);

  SparseState prod({2, 2, 2});
  prod.set({0, 0, 0}, q(1));
  HyperdetResult p = hyperdet_222(prod);
  EXPECT_EQ(p.label, TripartiteClass::Degenerate);
  EXPECT_EQ(p.rank, 1);

  SparseState biseparable({2, 2, 2});
  biseparable.set({0, 0, 0}, q(1));
  biseparable.set({0, 1, 1}, q(1));
  HyperdetResult b = hyperdet_222(biseparable);
  EXPECT_EQ(b.label, TripartiteClass::Degenerate);
  EXPECT_EQ(b.rank, 2);

  EXPECT_THROW(hyperdet_222(w_state(4)), std::invalid_argument);
}

TEST(Hyperdet, complex_ghz) {
  SparseState s({2, 2, 2});
  s.set({0, 0, 0}, q(1));
  s.set({1, 1, 1}, Scalar(Complex(0, 1)));
  HyperdetResult r = hyperdet_222(s);
  EXPECT_EQ(r.label, TripartiteClass::GhzClass);
}

// The hyperdeterminant classification is a SLOCC invariant: random invertible
// rational operators must not change the label.
TEST(Hyperdet, invariant_under_local_operators) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    LocalOperatorSet ops = {random_invertible_2x2(rng), random_invertible_2x2(rng),
                            random_invertible_2x2(rng)};
    SparseState g = apply_local(ops, ghz_state(3, 2));
    EXPECT_EQ(hyperdet_222(g).label, TripartiteClass::GhzClass);
    SparseState w = apply_local(ops, w_state(3));
    EXPECT_EQ(hyperdet_222(w).label, TripartiteClass::WClass);
  }
}
