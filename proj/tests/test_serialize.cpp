#include <gtest/gtest.h>

#include <filesystem>

#include "symrank/serialize.hpp"
#include "symrank/wpower.hpp"

using namespace symrank;

namespace {

Scalar q(long num, long den = 1) { return Scalar(make_rational(num, den)); }

}  // namespace

TEST(Serialize, scalar_round_trip) {
  Scalar r = q(22, 7);
  json jr = scalar_to_json(r);
  EXPECT_EQ(jr.at("q"), "22/7");
  EXPECT_EQ(scalar_from_json(jr), r);

  Scalar z(Complex(1.5, -2.25));
  json jz = scalar_to_json(z);
  EXPECT_EQ(scalar_from_json(jz), z);
  Scalar third(Complex(1.0 / 3.0, 0.0));
  EXPECT_EQ(scalar_from_json(scalar_to_json(third)), third);
}

TEST(Serialize, state_round_trip) {
  SparseState s({2, 3});
  s.set({0, 2}, q(-5, 3));
  s.set({1, 1}, Scalar(Complex(0.5, 0.25)));
  SparseState back = state_from_json(state_to_json(s));
  EXPECT_EQ(back, s);
}

TEST(Serialize, poly_round_trip) {
  HomogeneousPolynomial p = evaluation_image(fused_power(w_state(3), 2));
  HomogeneousPolynomial back = poly_from_json(poly_to_json(p));
  EXPECT_EQ(back, p);
}

TEST(Serialize, decomposition_round_trips) {
  SymmetricDecomposition sym = fischer_decompose({1, 1, 1});
  SymmetricDecomposition sym_back = symdec_from_json(symdec_to_json(sym));
  ASSERT_EQ(sym_back.rank(), sym.rank());
  EXPECT_EQ(sym_back.expand(), sym.expand());

  ProductDecomposition prod = strassen_certificate();
  ProductDecomposition prod_back = proddec_from_json(proddec_to_json(prod));
  ASSERT_EQ(prod_back.rank(), 7);
  EXPECT_EQ(prod_back.expand(), matmul_tensor(2));
}

TEST(Serialize, matrix_round_trip_is_sparse) {
  Matrix m(3, 2);
  m.at(0, 1) = q(1, 2);
  m.at(2, 0) = Scalar(Complex(0, -1));
  json j = matrix_to_json(m);
  EXPECT_EQ(j.at("entries").size(), 2u);
  Matrix back = matrix_from_json(j);
  EXPECT_EQ(back, m);
}

TEST(Serialize, witness_round_trip) {
  ConversionWitness w = dicke_merge_witness(2, 1);
  ConversionWitness back = witness_from_json(witness_to_json(w));
  EXPECT_EQ(back.source, w.source);
  EXPECT_EQ(back.target, w.target);
  EXPECT_EQ(back.scale, w.scale);
  VerifyResult v = verify_witness(back);
  EXPECT_TRUE(v.ok);
  EXPECT_TRUE(v.exact);
}

TEST(Serialize, fnv1a_test_vectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
}

TEST(Envelope, scalar_field_detection) {
  json sym = symdec_to_json(dicke_decomposition(2, 1));
  json env = make_envelope("symmetric", {{"gen", "dicke"}, {"j", {2, 1}}}, sym);
  EXPECT_EQ(env.at("format_version"), 1);
  EXPECT_EQ(env.at("kind"), "symmetric");
  EXPECT_EQ(env.at("scalar_field"), "rational");

  json csym = symdec_to_json(binary_monomial_decompose(3, 2));
  json cenv = make_envelope("symmetric", {{"gen", "monomial"}, {"exps", {3, 2}}}, csym);
  EXPECT_EQ(cenv.at("scalar_field"), "complex64");
}

TEST(Envelope, verify_and_tamper) {
  json env = make_envelope("symmetric", {{"gen", "dicke"}, {"j", {2, 1}}},
                           symdec_to_json(dicke_decomposition(2, 1)));
  EnvelopeCheck chk = verify_envelope(env);
  EXPECT_EQ(chk.kind, "symmetric");
  EXPECT_TRUE(chk.result.ok);
  EXPECT_TRUE(chk.result.exact);

  json bad = env;
  SymmetricDecomposition dec = symdec_from_json(bad.at("payload"));
  dec.terms[0].weight = dec.terms[0].weight * q(1001, 1000);
  bad["payload"] = symdec_to_json(dec);
  EXPECT_FALSE(verify_envelope(bad).result.ok);

  json wrong_version = env;
  wrong_version["format_version"] = 2;
  EXPECT_THROW(verify_envelope(wrong_version), std::invalid_argument);
  json wrong_kind = env;
  wrong_kind["kind"] = "mystery";
  EXPECT_THROW(verify_envelope(wrong_kind), std::invalid_argument);
}

TEST(Envelope, product_and_witness_kinds) {
  json penv = make_envelope("product", {{"gen", "matmul"}, {"d", 2}},
                            proddec_to_json(strassen_certificate()));
  EnvelopeCheck pc = verify_envelope(penv);
  EXPECT_TRUE(pc.result.ok);
  EXPECT_TRUE(pc.result.exact);

  json wenv = make_envelope("witness", {{"gen", "inline"}},
                            witness_to_json(dicke_merge_witness(3, 2)));
  EnvelopeCheck wc = verify_envelope(wenv);
  EXPECT_TRUE(wc.result.ok);
}

TEST(Envelope, rebuild_targets) {
  HomogeneousPolynomial w2 = rebuild_target_poly({{"gen", "w_power"}, {"N", 3}, {"n", 2}});
  EXPECT_EQ(w2, evaluation_image(fused_power(w_state(3), 2)));
  HomogeneousPolynomial mono = rebuild_target_poly({{"gen", "monomial"}, {"exps", {2, 1}}});
  EXPECT_EQ(mono.at({2, 1}), q(1));
  HomogeneousPolynomial blk = rebuild_target_poly({{"gen", "w3cubed_block"}, {"i", 0}});
  EXPECT_EQ(blk.vars(), 8);
  EXPECT_EQ(blk.degree(), 3);

  EXPECT_EQ(rebuild_target_state({{"gen", "ghz"}, {"N", 3}, {"d", 2}}), ghz_state(3, 2));
  EXPECT_EQ(rebuild_target_state({{"gen", "w"}, {"N", 4}}), w_state(4));
  EXPECT_EQ(rebuild_target_state({{"gen", "matmul"}, {"d", 2}}), matmul_tensor(2));
  EXPECT_THROW(rebuild_target_poly({{"gen", "nope"}}), std::invalid_argument);
  EXPECT_THROW(rebuild_target_state({{"gen", "nope"}}), std::invalid_argument);
}

TEST(Store, content_addressed_idempotent) {
  std::string dir = ::testing::TempDir() + "symrank_store_test";
  std::filesystem::remove_all(dir);
  json env = make_envelope("symmetric", {{"gen", "dicke"}, {"j", {2, 1}}},
                           symdec_to_json(dicke_decomposition(2, 1)));
  std::string p1 = store_certificate(env, dir);
  std::string p2 = store_certificate(env, dir);
  EXPECT_EQ(p1, p2);
  std::string stem = std::filesystem::path(p1).stem().string();
  EXPECT_EQ(stem.size(), 16u);
  json loaded = load_json_file(p1);
  EXPECT_EQ(loaded, env);
  EXPECT_TRUE(verify_envelope(loaded).result.ok);
  EXPECT_THROW(load_json_file(dir + "/missing.json"), std::invalid_argument);
  std::filesystem::remove_all(dir);
}
