// Drives the installed CLI binary through popen and checks exit codes plus
// a few load-bearing output fragments.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "symrank/serialize.hpp"

using namespace symrank;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(SYMRANK_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
  std::string out;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

std::string stored_path(const std::string& out) {
  auto pos = out.find("stored ");
  if (pos == std::string::npos) return {};
  pos += 7;
  auto end = out.find('\n', pos);
  return out.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
}

class Cli : public ::testing::Test {
 protected:
  static std::string store_;
  static void SetUpTestSuite() {
    store_ = ::testing::TempDir() + "symrank_cli_store";
    std::filesystem::remove_all(store_);
  }
  static void TearDownTestSuite() { std::filesystem::remove_all(store_); }
  static std::string with_store(const std::string& args) {
    return "--store '" + store_ + "' " + args;
  }
};

std::string Cli::store_;

}  // namespace

TEST_F(Cli, dicke_store_and_verify) {
  RunResult r = run_cli(with_store("dicke --m 3 --n 1"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("dicke(3,1): 4 terms"), std::string::npos) << r.out;
  std::string path = stored_path(r.out);
  ASSERT_FALSE(path.empty()) << r.out;

  RunResult v = run_cli("verify --cert '" + path + "'");
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_NE(v.out.find("symmetric certificate:"), std::string::npos) << v.out;
  EXPECT_NE(v.out.find("-> OK"), std::string::npos) << v.out;
}

TEST_F(Cli, tampered_certificate_fails) {
  RunResult r = run_cli(with_store("dicke --m 2 --n 1"));
  ASSERT_EQ(r.code, 0) << r.out;
  std::string path = stored_path(r.out);
  ASSERT_FALSE(path.empty());

  json env = load_json_file(path);
  SymmetricDecomposition dec = symdec_from_json(env.at("payload"));
  dec.terms[0].weight = dec.terms[0].weight * Scalar(make_rational(1001, 1000));
  env["payload"] = symdec_to_json(dec);
  std::string tampered = store_ + "/tampered.json";
  std::ofstream(tampered) << env.dump(2);

  RunResult v = run_cli("verify --cert '" + tampered + "'");
  EXPECT_EQ(v.code, 1) << v.out;
  EXPECT_NE(v.out.find("-> FAIL"), std::string::npos) << v.out;
}

TEST_F(Cli, usage_errors_exit_two) {
  EXPECT_EQ(run_cli("smlocc-demo --N 4").code, 2);
  EXPECT_EQ(run_cli("verify --cert /no/such/file.json").code, 2);
  EXPECT_EQ(run_cli("frobnicate").code, 2);
  EXPECT_EQ(run_cli("").code, 2);
  EXPECT_EQ(run_cli("hyperdet").code, 2);
}

TEST_F(Cli, rank_search_ghz_succeeds) {
  RunResult r = run_cli(with_store("rank-search --target ghz:3:2 --r 2 --restarts 6"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("seed 1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("stored "), std::string::npos) << r.out;
}

TEST_F(Cli, rank_search_w_at_rank_two_fails) {
  RunResult r = run_cli(with_store("rank-search --target w:3 --r 2 --restarts 6"));
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find("no certificate at rank 2"), std::string::npos) << r.out;
}

TEST_F(Cli, bounds_table_row) {
  RunResult r = run_cli("bounds-table --N-range 3 --n-range 2");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("N,n,lower,constructive_upper,generic_upper,nth_root"),
            std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("3,2,7,7,9,"), std::string::npos) << r.out;
}

TEST_F(Cli, threshold_value) {
  RunResult r = run_cli("threshold --omega 2.376 --c 100");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("= 32"), std::string::npos) << r.out;
}

TEST_F(Cli, hyperdet_labels) {
  RunResult g = run_cli("hyperdet --target ghz:3:2");
  EXPECT_EQ(g.code, 0) << g.out;
  EXPECT_NE(g.out.find("GHZ class, tensor rank 2"), std::string::npos) << g.out;

  RunResult w = run_cli("hyperdet --target w:3");
  EXPECT_EQ(w.code, 0) << w.out;
  EXPECT_NE(w.out.find("W class, tensor rank 3"), std::string::npos) << w.out;
}

TEST_F(Cli, eliminate_from_coeff_file) {
  std::filesystem::create_directories(store_);
  std::string coeffs = store_ + "/coeffs.json";
  std::ofstream(coeffs) << R"([{"perm": [0, 1], "k": 1, "q": "5/3"}])";
  RunResult r = run_cli(with_store("eliminate --N 4 --n 2 --coeffs '" + coeffs + "'"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("transvections restore the W power (exact)"), std::string::npos)
      << r.out;

  std::string path = stored_path(r.out);
  ASSERT_FALSE(path.empty());
  EXPECT_EQ(run_cli("verify --cert '" + path + "'").code, 0);
}

TEST_F(Cli, catalyst_both_modes) {
  RunResult g = run_cli(with_store("catalyst --N 5"));
  EXPECT_EQ(g.code, 0) << g.out;
  EXPECT_NE(g.out.find("generic catalyst"), std::string::npos) << g.out;

  RunResult s = run_cli(with_store("catalyst --N 5 --simple"));
  EXPECT_EQ(s.code, 0) << s.out;
  EXPECT_NE(s.out.find("simple catalyst"), std::string::npos) << s.out;
}

TEST_F(Cli, ghz_convert_from_stored_certificate) {
  RunResult r = run_cli(with_store("wpower --N 3 --n 2 --decompose"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("constructive certificate: 7 terms, exact"), std::string::npos)
      << r.out;
  std::string path = stored_path(r.out);
  ASSERT_FALSE(path.empty());

  RunResult g = run_cli(with_store("ghz-convert --cert '" + path + "'"));
  EXPECT_EQ(g.code, 0) << g.out;
  EXPECT_NE(g.out.find("GHZ(3,7) -> target, exact"), std::string::npos) << g.out;
}

TEST_F(Cli, strassen_summary) {
  RunResult r = run_cli(with_store("strassen"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("rank-7 certificate verified exactly"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("flattening lower bound: 4"), std::string::npos) << r.out;
}

TEST_F(Cli, w3cubed_summary) {
  RunResult r = run_cli("w3cubed");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("blocks sum to 4 * h (exact)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("substitution maps invert each other (exact)"), std::string::npos)
      << r.out;
}

TEST_F(Cli, monomial_certificate) {
  // two squarefree variables route through the roots-of-unity branch, so the
  // certificate is complex and reports a residual instead of "exact"
  RunResult r = run_cli(with_store("monomial --exps 2,1,1"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("x0^2*x1*x2: 6 terms, residual"), std::string::npos) << r.out;
  std::string path = stored_path(r.out);
  ASSERT_FALSE(path.empty()) << r.out;

  RunResult v = run_cli("verify --cert '" + path + "'");
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_NE(v.out.find("-> OK"), std::string::npos) << v.out;
}

TEST_F(Cli, smlocc_demo_report) {
  RunResult r = run_cli(with_store("smlocc-demo --N 5"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("capacity 16 >= 13 terms"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("single copy impossible: rank(W) = 5 > 4"), std::string::npos)
      << r.out;
}
