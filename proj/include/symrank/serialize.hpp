#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "symrank/slocc.hpp"

namespace symrank {

using nlohmann::json;

inline json scalar_to_json(const Scalar& s) {
  json j;
  if (s.is_rational()) {
    j["q"] = s.rational().get_str();
  } else {
    Complex z = s.to_complex();
    j["re"] = z.real();
    j["im"] = z.imag();
  }
  return j;
}

inline Scalar scalar_from_json(const json& j) {
  if (j.contains("q")) return Scalar(rational_from_string(j.at("q").get<std::string>()));
  return Scalar(Complex(j.at("re").get<double>(), j.at("im").get<double>()));
}

inline json state_to_json(const SparseState& s) {
  json j;
  j["local_dims"] = s.dims();
  json amps = json::array();
  for (const auto& [k, v] : s.amplitudes()) {
    json t = scalar_to_json(v);
    t["idx"] = k;
    amps.push_back(std::move(t));
  }
  j["amplitudes"] = std::move(amps);
  return j;
}

inline SparseState state_from_json(const json& j) {
  SparseState s(j.at("local_dims").get<std::vector<int>>());
  for (const auto& t : j.at("amplitudes"))
    s.set(t.at("idx").get<MultiIndex>(), scalar_from_json(t));
  return s;
}

inline json poly_to_json(const HomogeneousPolynomial& p) {
  json j;
  j["vars"] = p.vars();
  j["degree"] = p.degree();
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) {
    json t = scalar_to_json(c);
    t["exps"] = e;
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline HomogeneousPolynomial poly_from_json(const json& j) {
  HomogeneousPolynomial p(j.at("vars").get<int>(), j.at("degree").get<int>());
  for (const auto& t : j.at("terms"))
    p.set(t.at("exps").get<ExponentVec>(), scalar_from_json(t));
  return p;
}

inline json form_to_json(const LinearForm& f) {
  json a = json::array();
  for (const auto& s : f) a.push_back(scalar_to_json(s));
  return a;
}

inline LinearForm form_from_json(const json& j) {
  LinearForm f;
  for (const auto& e : j) f.push_back(scalar_from_json(e));
  return f;
}

inline json symdec_to_json(const SymmetricDecomposition& d) {
  json j;
  j["vars"] = d.vars;
  j["degree"] = d.degree;
  json terms = json::array();
  for (const auto& t : d.terms)
    terms.push_back({{"weight", scalar_to_json(t.weight)}, {"form", form_to_json(t.form)}});
  j["terms"] = std::move(terms);
  return j;
}

inline SymmetricDecomposition symdec_from_json(const json& j) {
  SymmetricDecomposition d;
  d.vars = j.at("vars").get<int>();
  d.degree = j.at("degree").get<int>();
  for (const auto& t : j.at("terms"))
    d.terms.push_back({scalar_from_json(t.at("weight")), form_from_json(t.at("form"))});
  return d;
}

inline json proddec_to_json(const ProductDecomposition& d) {
  json j;
  j["dims"] = d.dims;
  json terms = json::array();
  for (const auto& t : d.terms) {
    json vectors = json::array();
    for (const auto& v : t.vectors) vectors.push_back(form_to_json(v));
    terms.push_back({{"weight", scalar_to_json(t.weight)}, {"vectors", std::move(vectors)}});
  }
  j["terms"] = std::move(terms);
  return j;
}

inline ProductDecomposition proddec_from_json(const json& j) {
  ProductDecomposition d;
  d.dims = j.at("dims").get<std::vector<int>>();
  for (const auto& t : j.at("terms")) {
    ProductTerm pt;
    pt.weight = scalar_from_json(t.at("weight"));
    for (const auto& v : t.at("vectors")) pt.vectors.push_back(form_from_json(v));
    d.terms.push_back(std::move(pt));
  }
  return d;
}

inline json matrix_to_json(const Matrix& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  json entries = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      if (m.at(r, c).is_zero()) continue;
      json e = scalar_to_json(m.at(r, c));
      e["r"] = r;
      e["c"] = c;
      entries.push_back(std::move(e));
    }
  j["entries"] = std::move(entries);
  return j;
}

inline Matrix matrix_from_json(const json& j) {
  Matrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
  for (const auto& e : j.at("entries"))
    m.at(e.at("r").get<int>(), e.at("c").get<int>()) = scalar_from_json(e);
  return m;
}

inline json witness_to_json(const ConversionWitness& w) {
  json j;
  j["source"] = state_to_json(w.source);
  j["target"] = state_to_json(w.target);
  j["scale"] = scalar_to_json(w.scale);
  json ops = json::array();
  for (const auto& m : w.ops) ops.push_back(matrix_to_json(m));
  j["ops"] = std::move(ops);
  return j;
}

inline ConversionWitness witness_from_json(const json& j) {
  ConversionWitness w;
  w.source = state_from_json(j.at("source"));
  w.target = state_from_json(j.at("target"));
  w.scale = scalar_from_json(j.at("scale"));
  for (const auto& m : j.at("ops")) w.ops.push_back(matrix_from_json(m));
  return w;
}

namespace detail {

inline bool payload_has_complex(const json& j) {
  if (j.is_object()) {
    if (j.contains("re") || j.contains("im")) return true;
    for (const auto& [k, v] : j.items()) {
      (void)k;
      if (payload_has_complex(v)) return true;
    }
  } else if (j.is_array()) {
    for (const auto& v : j)
      if (payload_has_complex(v)) return true;
  }
  return false;
}

}  // namespace detail

// Self-contained certificate file: the target descriptor is enough to rebuild
// the reference object, so verification never trusts the payload.
inline json make_envelope(const std::string& kind, json target, json payload,
                          json provenance = json::object()) {
  json env;
  env["format_version"] = 1;
  env["kind"] = kind;
  env["target"] = std::move(target);
  env["payload"] = std::move(payload);
  env["scalar_field"] = detail::payload_has_complex(env["payload"]) ? "complex64" : "rational";
  env["provenance"] = std::move(provenance);
  return env;
}

inline HomogeneousPolynomial rebuild_target_poly(const json& desc) {
  std::string gen = desc.at("gen").get<std::string>();
  if (gen == "w_power")
    return evaluation_image(
        fused_power(w_state(desc.at("N").get<int>()), desc.at("n").get<int>()));
  if (gen == "dicke") return evaluation_image(dicke_state(desc.at("j").get<ExponentVec>()));
  if (gen == "monomial") {
    ExponentVec e = desc.at("exps").get<ExponentVec>();
    int deg = 0;
    for (int x : e) deg += x;
    HomogeneousPolynomial p(static_cast<int>(e.size()), deg);
    p.set(e, Scalar::one());
    return p;
  }
  if (gen == "w3cubed") return evaluation_image(fused_power(w_state(3), 3));
  if (gen == "w3cubed_block") return w3_cubed_reduction().blocks.at(desc.at("i").get<int>());
  if (gen == "inline_poly") return poly_from_json(desc.at("poly"));
  throw std::invalid_argument("unknown polynomial target generator: " + gen);
}

inline SparseState rebuild_target_state(const json& desc) {
  std::string gen = desc.at("gen").get<std::string>();
  if (gen == "w_power")
    return fused_power(w_state(desc.at("N").get<int>()), desc.at("n").get<int>());
  if (gen == "w") return w_state(desc.at("N").get<int>());
  if (gen == "ghz") return ghz_state(desc.at("N").get<int>(), desc.at("d").get<int>());
  if (gen == "dicke") return dicke_state(desc.at("j").get<ExponentVec>());
  if (gen == "matmul") return matmul_tensor(desc.at("d").get<int>());
  if (gen == "inline_state") return state_from_json(desc.at("state"));
  throw std::invalid_argument("unknown state target generator: " + gen);
}

struct EnvelopeCheck {
  std::string kind;
  VerifyResult result;
};

inline EnvelopeCheck verify_envelope(const json& env, double tol = 1e-8) {
  if (env.at("format_version").get<int>() != 1)
    throw std::invalid_argument("unsupported certificate format version");
  EnvelopeCheck chk;
  chk.kind = env.at("kind").get<std::string>();
  const json& payload = env.at("payload");
  if (chk.kind == "symmetric") {
    chk.result = verify_waring(symdec_from_json(payload), rebuild_target_poly(env.at("target")), tol);
  } else if (chk.kind == "product") {
    chk.result = verify_product(proddec_from_json(payload), rebuild_target_state(env.at("target")), tol);
  } else if (chk.kind == "witness") {
    chk.result = verify_witness(witness_from_json(payload), tol);
  } else {
    throw std::invalid_argument("unknown certificate kind: " + chk.kind);
  }
  return chk;
}

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// nlohmann objects keep keys sorted, so dump() is already canonical.
inline std::string canonical_dump(const json& j) { return j.dump(); }

inline std::string store_certificate(const json& env, const std::string& dir) {
  std::string body = canonical_dump(env);
  std::uint64_t h = fnv1a64(body);
  std::ostringstream name;
  name << std::hex << std::setw(16) << std::setfill('0') << h;
  std::filesystem::create_directories(dir);
  std::string path = dir + "/" + name.str() + ".json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body << "\n";
  return path;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  return json::parse(in);
}

}  // namespace symrank
