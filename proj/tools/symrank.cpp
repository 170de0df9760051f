#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "symrank/ranksearch.hpp"
#include "symrank/serialize.hpp"

using namespace symrank;

namespace {

std::string scalar_str(const Scalar& s) {
  if (s.is_rational()) return s.rational().get_str();
  Complex z = s.to_complex();
  std::ostringstream o;
  o << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return o.str();
}

std::string mono_str(const ExponentVec& e) {
  std::ostringstream o;
  bool first = true;
  for (size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!first) o << "*";
    o << "x" << i;
    if (e[i] > 1) o << "^" << e[i];
    first = false;
  }
  if (first) o << "1";
  return o.str();
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

std::pair<int, int> parse_range(const std::string& s) {
  auto pos = s.find(':');
  if (pos == std::string::npos) {
    int v = std::stoi(s);
    return {v, v};
  }
  int lo = std::stoi(s.substr(0, pos));
  int hi = std::stoi(s.substr(pos + 1));
  if (hi < lo) throw std::invalid_argument("bad range " + s);
  return {lo, hi};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

json provenance(const std::vector<std::string>& argv,
                std::optional<unsigned long long> seed = {}) {
  std::ostringstream cmd;
  for (size_t i = 0; i < argv.size(); ++i) cmd << (i ? " " : "") << argv[i];
  json p;
  p["command"] = cmd.str();
  if (seed) p["seed"] = *seed;
  return p;
}

struct TargetSpec {
  json descriptor;
  std::optional<SparseState> state;
  std::optional<HomogeneousPolynomial> poly;
};

TargetSpec resolve_target(const std::string& spec, bool symmetric) {
  auto parts = split(spec, ':');
  TargetSpec t;
  const std::string& gen = parts[0];
  auto arg = [&](size_t i) {
    if (i >= parts.size()) throw std::invalid_argument("target spec " + spec + " is missing arguments");
    return std::stoi(parts[i]);
  };
  if (gen == "file") {
    if (parts.size() < 2) throw std::invalid_argument("file target needs a path");
    std::string path = spec.substr(5);
    json j = load_json_file(path);
    if (symmetric) {
      t.descriptor = {{"gen", "inline_poly"}, {"poly", j}};
      t.poly = poly_from_json(j);
    } else {
      t.descriptor = {{"gen", "inline_state"}, {"state", j}};
      t.state = state_from_json(j);
    }
    return t;
  }
  if (gen == "w") {
    t.descriptor = {{"gen", "w"}, {"N", arg(1)}};
  } else if (gen == "ghz") {
    t.descriptor = {{"gen", "ghz"}, {"N", arg(1)}, {"d", arg(2)}};
  } else if (gen == "wpower") {
    t.descriptor = {{"gen", "w_power"}, {"N", arg(1)}, {"n", arg(2)}};
  } else if (gen == "dicke") {
    t.descriptor = {{"gen", "dicke"}, {"j", std::vector<int>{arg(1), arg(2)}}};
  } else if (gen == "matmul") {
    t.descriptor = {{"gen", "matmul"}, {"d", arg(1)}};
  } else if (gen == "w3cubed") {
    t.descriptor = {{"gen", "w3cubed"}};
  } else {
    throw std::invalid_argument("unknown target spec: " + spec);
  }
  if (symmetric) t.poly = rebuild_target_poly(t.descriptor);
  else t.state = rebuild_target_state(t.descriptor);
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  CLI::App app{"symrank: Waring and tensor rank certificates for symmetric states"};
  app.require_subcommand(1);
  std::string store_dir = "certs";
  app.add_option("--store", store_dir, "certificate store directory")->capture_default_str();

  int rc = 0;

  // dicke
  int dm = 0, dn = 0;
  auto* dicke_cmd = app.add_subcommand("dicke", "Waring certificate for a two-level Dicke state");
  dicke_cmd->add_option("--m", dm, "zero multiplicity")->required();
  dicke_cmd->add_option("--n", dn, "one multiplicity")->required();
  dicke_cmd->callback([&] {
    SymmetricDecomposition dec = dicke_decomposition(dm, dn);
    VerifyResult v = verify_waring(dec, evaluation_image(dicke_state({dm, dn})));
    json env = make_envelope("symmetric", {{"gen", "dicke"}, {"j", std::vector<int>{dm, dn}}},
                             symdec_to_json(dec), provenance(args));
    std::string path = store_certificate(env, store_dir);
    std::cout << "dicke(" << dm << "," << dn << "): " << dec.rank() << " terms, "
              << (v.exact ? "exact" : "residual " + std::to_string(v.residual)) << "\n"
              << "stored " << path << "\n";
  });

  // wpower
  int wN = 0, wn = 0;
  bool w_expand = false, w_decompose = false, w_bounds = false;
  auto* wpow_cmd = app.add_subcommand("wpower", "fused powers of the W state");
  wpow_cmd->add_option("--N", wN, "parties")->required();
  wpow_cmd->add_option("--n", wn, "copies")->required();
  wpow_cmd->add_flag("--expand", w_expand, "print the monomial expansion");
  wpow_cmd->add_flag("--decompose", w_decompose, "emit the constructive certificate");
  wpow_cmd->add_flag("--bounds", w_bounds, "print the bound report");
  wpow_cmd->callback([&] {
    if (!w_expand && !w_decompose) w_bounds = true;
    if (w_expand) {
      WPowerExpansion ex = wpower_expansion(wN, wn);
      for (const auto& e : ex.entries) {
        std::cout << "k=" << e.k << "  " << mono_str(e.exps) << "  coeff "
                  << multinomial(wN, e.exps).get_str() << "  blocks";
        for (const auto& b : e.partition) {
          std::cout << " {";
          for (size_t i = 0; i < b.size(); ++i) std::cout << (i ? "," : "") << b[i] + 1;
          std::cout << "}";
        }
        std::cout << "\n";
      }
      std::cout << ex.entries.size() << " monomials\n";
    }
    if (w_decompose) {
      SymmetricDecomposition dec = wn_constructive_decomposition(wN, wn);
      VerifyResult v = verify_waring(dec, wpower_expansion(wN, wn).polynomial());
      json env = make_envelope("symmetric", {{"gen", "w_power"}, {"N", wN}, {"n", wn}},
                               symdec_to_json(dec), provenance(args));
      std::string path = store_certificate(env, store_dir);
      std::cout << "constructive certificate: " << dec.rank() << " terms, "
                << (v.exact ? "exact" : "residual " + std::to_string(v.residual)) << "\n"
                << "stored " << path << "\n";
    }
    if (w_bounds) {
      BoundReport r = bound_report(wN, wn);
      std::cout << "N=" << r.N << " n=" << r.n << " lower=" << r.lower.get_str()
                << " constructive=" << r.constructive_upper.get_str()
                << " generic=" << r.generic_upper.get_str() << " nth_root=" << r.nth_root
                << "\n";
    }
  });

  // monomial
  std::string mono_exps;
  auto* mono_cmd = app.add_subcommand("monomial", "Waring certificate for one monomial");
  mono_cmd->add_option("--exps", mono_exps, "comma-separated exponents")->required();
  mono_cmd->callback([&] {
    ExponentVec e = parse_int_list(mono_exps);
    SymmetricDecomposition dec = monomial_decompose(e);
    int deg = 0;
    for (int x : e) deg += x;
    HomogeneousPolynomial target(static_cast<int>(e.size()), deg);
    target.set(e, Scalar::one());
    VerifyResult v = verify_waring(dec, target);
    json env = make_envelope("symmetric", {{"gen", "monomial"}, {"exps", e}},
                             symdec_to_json(dec), provenance(args));
    std::string path = store_certificate(env, store_dir);
    std::cout << mono_str(e) << ": " << dec.rank() << " terms, "
              << (v.exact ? "exact" : "residual " + std::to_string(v.residual)) << "\n"
              << "stored " << path << "\n";
  });

  // bounds-table
  std::string nrange = "3:8", crange = "1:3", table_out;
  auto* table_cmd = app.add_subcommand("bounds-table", "rank bounds over a parameter grid");
  table_cmd->add_option("--N-range", nrange, "parties, lo:hi")->capture_default_str();
  table_cmd->add_option("--n-range", crange, "copies, lo:hi")->capture_default_str();
  table_cmd->add_option("--out", table_out, "write CSV here instead of stdout");
  table_cmd->callback([&] {
    auto [nlo, nhi] = parse_range(nrange);
    auto [clo, chi] = parse_range(crange);
    std::ostringstream csv;
    csv << "N,n,lower,constructive_upper,generic_upper,nth_root\n";
    for (int N = nlo; N <= nhi; ++N)
      for (int n = clo; n <= chi; ++n) {
        BoundReport r = bound_report(N, n);
        csv << r.N << "," << r.n << "," << r.lower.get_str() << ","
            << r.constructive_upper.get_str() << "," << r.generic_upper.get_str() << ","
            << r.nth_root << "\n";
      }
    if (table_out.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream f(table_out, std::ios::trunc);
      if (!f) throw std::runtime_error("cannot write " + table_out);
      f << csv.str();
      std::cout << "wrote " << table_out << "\n";
    }
  });

  // w3cubed
  auto* w3_cmd = app.add_subcommand("w3cubed", "cubic reduction of the cubed W3 polynomial");
  w3_cmd->callback([&] {
    W3CubedReduction r = w3_cubed_reduction();
    std::cout << "h has " << r.h.term_count() << " monomials; blocks sum to "
              << scalar_str(r.scale) << " * h (exact)\n";
    for (size_t i = 0; i < r.blocks.size(); ++i)
      std::cout << "block " << i + 1 << ": " << r.blocks[i].term_count() << " monomials\n";
    // substitution maps must compose to the identity
    for (int i = 0; i < 8; ++i) {
      LinearForm comp(8, Scalar::zero());
      for (int j = 0; j < 8; ++j)
        for (int k = 0; k < 8; ++k) comp[k] = comp[k] + r.inverse[i][j] * r.forward[j][k];
      for (int k = 0; k < 8; ++k)
        if (!(comp[k] == (k == i ? Scalar::one() : Scalar::zero())))
          throw std::logic_error("substitution maps do not invert each other");
    }
    std::cout << "substitution maps invert each other (exact)\n";
  });

  // strassen
  auto* str_cmd = app.add_subcommand("strassen", "rank-7 certificate for 2x2 matrix multiplication");
  str_cmd->callback([&] {
    ProductDecomposition dec = strassen_certificate();
    json env = make_envelope("product", {{"gen", "matmul"}, {"d", 2}}, proddec_to_json(dec),
                             provenance(args));
    std::string path = store_certificate(env, store_dir);
    RelabelWitness rel = epr_matmul_relabel();
    int fb = flattening_bound_all(matmul_tensor(2));
    std::cout << "rank-7 certificate verified exactly; stored " << path << "\n"
              << "EPR triangle relabels onto <2,2,2> via party permutation ("
              << rel.party_perm[0] << "," << rel.party_perm[1] << "," << rel.party_perm[2]
              << ") plus one local digit swap (exact)\n"
              << "flattening lower bound: " << fb << "\n";
  });

  // threshold
  double th_omega = 2.376, th_c = 100;
  auto* th_cmd = app.add_subcommand("threshold", "recursion depth where rank 7 beats omega");
  th_cmd->add_option("--omega", th_omega, "target exponent")->capture_default_str();
  th_cmd->add_option("--c", th_c, "constant factor")->capture_default_str();
  th_cmd->callback([&] {
    std::cout << "threshold(" << th_omega << "," << th_c << ") = "
              << matmul_threshold(th_omega, th_c) << "\n";
  });

  // verify
  std::string vc_path;
  double vc_tol = 1e-8;
  auto* verify_cmd = app.add_subcommand("verify", "re-verify a stored certificate");
  verify_cmd->add_option("--cert", vc_path, "certificate file")->required();
  verify_cmd->add_option("--tol", vc_tol, "residual tolerance")->capture_default_str();
  verify_cmd->callback([&] {
    EnvelopeCheck chk = verify_envelope(load_json_file(vc_path), vc_tol);
    std::cout << chk.kind << " certificate: "
              << (chk.result.exact ? "exact" : "residual " + std::to_string(chk.result.residual))
              << " -> " << (chk.result.ok ? "OK" : "FAIL") << "\n";
    if (!chk.result.ok) rc = 1;
  });

  // ghz-convert
  std::string gc_path;
  auto* gc_cmd = app.add_subcommand("ghz-convert", "turn a certificate into GHZ conversion operators");
  gc_cmd->add_option("--cert", gc_path, "certificate file")->required();
  gc_cmd->callback([&] {
    json env = load_json_file(gc_path);
    std::string kind = env.at("kind").get<std::string>();
    ProductDecomposition dec;
    SparseState target({2, 2});
    if (kind == "product") {
      dec = proddec_from_json(env.at("payload"));
      target = rebuild_target_state(env.at("target"));
    } else if (kind == "symmetric") {
      dec = symmetric_to_product(symdec_from_json(env.at("payload")));
      target = state_from_poly(rebuild_target_poly(env.at("target")));
    } else {
      throw std::invalid_argument("ghz-convert needs a symmetric or product certificate");
    }
    ConversionWitness w = ghz_to_state_operators(dec, target);
    VerifyResult v = verify_witness(w);
    json wenv = make_envelope("witness", env.at("target"), witness_to_json(w), provenance(args));
    std::string path = store_certificate(wenv, store_dir);
    std::cout << "GHZ(" << target.parties() << "," << dec.rank() << ") -> target, "
              << (v.exact ? "exact" : "residual " + std::to_string(v.residual)) << "\n"
              << "stored " << path << "\n";
  });

  // smlocc-demo
  int sm_N = 5, sm_level = 0;
  auto* sm_cmd = app.add_subcommand("smlocc-demo", "two copies of a lower GHZ level reach W^2");
  sm_cmd->add_option("--N", sm_N, "parties")->required();
  sm_cmd->add_option("--level", sm_level, "GHZ level per copy (default N-1)");
  sm_cmd->callback([&] {
    SmloccReport rep = smlocc_w_demo(sm_N, sm_level);
    VerifyResult v = verify_witness(rep.witness);
    json env = make_envelope("witness", {{"gen", "w_power"}, {"N", sm_N}, {"n", 2}},
                             witness_to_json(rep.witness), provenance(args));
    std::string path = store_certificate(env, store_dir);
    std::cout << "N=" << rep.N << ": (GHZ^" << rep.level << ")^{x2} -> W^{x2} with capacity "
              << rep.capacity << " >= " << rep.cert_terms << " terms, residual " << v.residual
              << "\n"
              << "single copy impossible: rank(W) = " << rep.single_copy_rank << " > "
              << rep.single_copy_capacity << " = best single-copy GHZ level\n"
              << "stored " << path << "\n";
  });

  // catalyst
  int cat_N = 5, cat_n = 2;
  bool cat_simple = false;
  auto* cat_cmd = app.add_subcommand("catalyst", "exchange catalysis witnesses around W^{xn}");
  cat_cmd->add_option("--N", cat_N, "parties")->required();
  cat_cmd->add_option("--n", cat_n, "copies in the multi-copy witness")->capture_default_str();
  cat_cmd->add_flag("--simple", cat_simple, "use the two-block catalyst phi + psi");
  cat_cmd->callback([&] {
    SparseState psi = ghz_state(cat_N, cat_N - 1);
    SparseState phi = w_state(cat_N);
    ConversionWitness mcw = w_power_ghz_witness(cat_N, cat_simple ? 2 : cat_n, cat_N - 1);
    ConversionWitness w = cat_simple ? catalysis_simple_witness(psi, phi, mcw)
                                     : catalysis_witness(psi, phi, cat_n, mcw);
    VerifyResult v = verify_witness(w);
    json env = make_envelope("witness", {{"gen", "inline"}}, witness_to_json(w), provenance(args));
    std::string path = store_certificate(env, store_dir);
    std::cout << (cat_simple ? "simple" : "generic") << " catalyst: psi x c -> phi x c on "
              << w.source.parties() << " parties (local dims " << w.source.dims()[0] << " -> "
              << w.target.dims()[0] << "), residual " << v.residual << "\n"
              << "stored " << path << "\n";
  });

  // eliminate
  int el_N = 3, el_n = 2;
  std::string el_coeffs;
  auto* el_cmd = app.add_subcommand("eliminate", "remove cross terms from a perturbed W power");
  el_cmd->add_option("--N", el_N, "parties + 1 (the W factor has N-1 parties)")->required();
  el_cmd->add_option("--n", el_n, "copies")->required();
  el_cmd->add_option("--coeffs", el_coeffs, "JSON cross-term list")->required();
  el_cmd->callback([&] {
    json j = load_json_file(el_coeffs);
    std::vector<CrossTerm> terms;
    for (const auto& t : j) {
      CrossTerm ct;
      ct.perm = t.at("perm").get<std::vector<int>>();
      ct.k = t.at("k").get<int>();
      ct.c = scalar_from_json(t);
      terms.push_back(std::move(ct));
    }
    EliminationResult res = lemma_elimination(el_N, el_n, terms);
    VerifyResult v = verify_witness(res.witness);
    json env = make_envelope("witness", {{"gen", "inline"}}, witness_to_json(res.witness),
                             provenance(args));
    std::string path = store_certificate(env, store_dir);
    std::cout << "omega has " << res.omega.nonzeros() << " amplitudes; "
              << res.transvections.size() << " transvections restore the W power ("
              << (v.exact ? "exact" : "FAILED") << ")\n"
              << "stored " << path << "\n";
  });

  // rank-search
  std::string rs_target;
  int rs_rank = 1, rs_restarts = 20, rs_iters = 2000;
  unsigned long long rs_seed = 1;
  double rs_tol = 1e-10;
  bool rs_symmetric = false;
  auto* rs_cmd = app.add_subcommand("rank-search", "numeric ALS rank search");
  rs_cmd->add_option("--target", rs_target,
                     "w:N | ghz:N:d | wpower:N:n | dicke:m:n | matmul:d | w3cubed | file:path")
      ->required();
  rs_cmd->add_option("--r", rs_rank, "candidate rank")->required();
  rs_cmd->add_option("--restarts", rs_restarts, "random restarts")->capture_default_str();
  rs_cmd->add_option("--iters", rs_iters, "iteration cap")->capture_default_str();
  rs_cmd->add_option("--seed", rs_seed, "RNG seed")->capture_default_str();
  rs_cmd->add_option("--tol", rs_tol, "success residual")->capture_default_str();
  rs_cmd->add_flag("--symmetric", rs_symmetric, "search weighted powers of linear forms");
  rs_cmd->callback([&] {
    TargetSpec t = resolve_target(rs_target, rs_symmetric);
    AlsConfig cfg;
    cfg.rank = rs_rank;
    cfg.restarts = rs_restarts;
    cfg.max_iters = rs_iters;
    cfg.seed = rs_seed;
    cfg.tol = rs_tol;
    std::cout << "seed " << rs_seed << "\n";
    SearchOutcome out = rs_symmetric ? symmetric_als(*t.poly, cfg) : cp_als(*t.state, cfg);
    for (const auto& st : out.restarts)
      std::cout << "restart " << st.restart << ": residual " << st.residual << ", metric "
                << st.factor_metric << ", iters " << st.iterations
                << (st.degenerate ? ", DEGENERATE" : "") << "\n";
    std::cout << "best residual " << out.best_residual << " (restart " << out.best_restart
              << ")\n";
    if (out.degenerate)
      std::cout << "degeneracy flag: good residual only with exploding factor norms\n";
    if (out.symmetric_certificate) {
      json env = make_envelope("symmetric", t.descriptor,
                               symdec_to_json(*out.symmetric_certificate),
                               provenance(args, rs_seed));
      std::cout << "stored " << store_certificate(env, store_dir) << "\n";
    } else if (out.product_certificate) {
      json env = make_envelope("product", t.descriptor,
                               proddec_to_json(*out.product_certificate),
                               provenance(args, rs_seed));
      std::cout << "stored " << store_certificate(env, store_dir) << "\n";
    } else {
      std::cout << "no certificate at rank " << rs_rank << "\n";
      rc = 1;
    }
  });

  // hyperdet
  std::string hd_state, hd_target;
  auto* hd_cmd = app.add_subcommand("hyperdet", "Cayley hyperdeterminant classification (2x2x2)");
  hd_cmd->add_option("--state", hd_state, "state JSON file");
  hd_cmd->add_option("--target", hd_target, "generator spec, e.g. ghz:3:2 or w:3");
  hd_cmd->callback([&] {
    SparseState s({2, 2, 2});
    if (!hd_state.empty()) s = state_from_json(load_json_file(hd_state));
    else if (!hd_target.empty()) s = *resolve_target(hd_target, false).state;
    else throw std::invalid_argument("hyperdet needs --state or --target");
    HyperdetResult r = hyperdet_222(s);
    const char* label = r.label == TripartiteClass::GhzClass ? "GHZ class"
                        : r.label == TripartiteClass::WClass ? "W class"
                                                             : "degenerate";
    std::cout << "delta = " << scalar_str(r.delta) << "\n"
              << label << ", tensor rank " << r.rank << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
