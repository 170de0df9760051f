#pragma once

#include <functional>
#include <vector>

#include "symrank/polynomial.hpp"
#include "symrank/state.hpp"

namespace symrank {

// One summand of a Waring certificate: weight * (linear form)^degree.
struct WaringTerm {
  Scalar weight;
  LinearForm form;
};

struct SymmetricDecomposition {
  int vars = 0;
  int degree = 0;
  std::vector<WaringTerm> terms;

  int rank() const { return static_cast<int>(terms.size()); }

  bool all_rational() const {
    for (const auto& t : terms) {
      if (!t.weight.is_rational()) return false;
      for (const auto& c : t.form)
        if (!c.is_rational()) return false;
    }
    return true;
  }

  HomogeneousPolynomial expand() const {
    HomogeneousPolynomial p(vars, degree);
    for (const auto& t : terms) {
      if (static_cast<int>(t.form.size()) != vars)
        throw std::invalid_argument("waring term arity mismatch");
      p = p + expand_power(t.form, degree).scaled(t.weight);
    }
    return p;
  }
};

// One summand of a tensor certificate: weight * v_1 x ... x v_n.
struct ProductTerm {
  Scalar weight;
  std::vector<std::vector<Scalar>> vectors;
};

struct ProductDecomposition {
  std::vector<int> dims;
  std::vector<ProductTerm> terms;

  int rank() const { return static_cast<int>(terms.size()); }

  bool all_rational() const {
    for (const auto& t : terms) {
      if (!t.weight.is_rational()) return false;
      for (const auto& v : t.vectors)
        for (const auto& c : v)
          if (!c.is_rational()) return false;
    }
    return true;
  }

  SparseState expand() const {
    SparseState s(dims);
    const int parties = static_cast<int>(dims.size());
    for (const auto& t : terms) {
      if (static_cast<int>(t.vectors.size()) != parties)
        throw std::invalid_argument("product term party count mismatch");
      for (int p = 0; p < parties; ++p)
        if (static_cast<int>(t.vectors[p].size()) != dims[p])
          throw std::invalid_argument("product term vector length mismatch");
      MultiIndex idx(parties);
      std::function<void(int, const Scalar&)> rec = [&](int p, const Scalar& coeff) {
        if (p == parties) {
          s.add(idx, coeff);
          return;
        }
        for (int j = 0; j < dims[p]; ++j) {
          const Scalar& e = t.vectors[p][j];
          if (e.is_zero()) continue;
          idx[p] = j;
          rec(p + 1, coeff * e);
        }
      };
      rec(0, t.weight);
    }
    return s;
  }
};

struct VerifyResult {
  bool ok = false;
  bool exact = false;   // comparison was done in exact arithmetic
  double residual = 0;  // relative L2 distance of the expansion from the target
};

inline VerifyResult verify_waring(const SymmetricDecomposition& dec,
                                  const HomogeneousPolynomial& target, double tol = 1e-9) {
  if (dec.vars != target.vars() || dec.degree != target.degree())
    throw std::invalid_argument("certificate shape does not match target polynomial");
  HomogeneousPolynomial e = dec.expand();
  VerifyResult r;
  r.exact = e.all_rational() && target.all_rational();
  if (r.exact) {
    r.ok = (e == target);
    r.residual = r.ok ? 0.0 : rel_poly_distance(e, target);
  } else {
    r.residual = rel_poly_distance(e, target);
    r.ok = r.residual <= tol;
  }
  return r;
}

inline VerifyResult verify_product(const ProductDecomposition& dec, const SparseState& target,
                                   double tol = 1e-9) {
  if (dec.dims != target.dims())
    throw std::invalid_argument("certificate shape does not match target state");
  SparseState e = dec.expand();
  VerifyResult r;
  r.exact = e.all_rational() && target.all_rational();
  if (r.exact) {
    r.ok = (e == target);
    if (!r.ok) {
      SparseState d = e + target.scaled(Scalar(-1));
      double ref = target.norm();
      r.residual = ref == 0 ? d.norm() : d.norm() / ref;
    }
  } else {
    SparseState d = e + target.scaled(Scalar(-1));
    double ref = target.norm();
    r.residual = ref == 0 ? d.norm() : d.norm() / ref;
    r.ok = r.residual <= tol;
  }
  return r;
}

}  // namespace symrank
