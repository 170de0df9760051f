#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "symrank/scalar.hpp"

namespace symrank {

// Exponent vector of a monomial; length = variable count, entries sum to the
// polynomial degree.
using ExponentVec = std::vector<int>;

inline Scalar scalar_pow(const Scalar& s, int e) {
  if (e < 0) throw std::invalid_argument("negative scalar power");
  Scalar r = Scalar::one();
  for (int i = 0; i < e; ++i) r = r * s;
  return r;
}

inline mpz_class factorial_mpz(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

// n! / prod(e_i!) with sum(e_i) == n.
inline Rational multinomial(int n, const ExponentVec& e) {
  int sum = 0;
  for (int x : e) {
    if (x < 0) throw std::invalid_argument("negative exponent in multinomial");
    sum += x;
  }
  if (sum != n) throw std::invalid_argument("multinomial exponents do not sum to n");
  mpz_class den = 1;
  for (int x : e) den *= factorial_mpz(x);
  return Rational(factorial_mpz(n)) / Rational(den);
}

inline Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

class HomogeneousPolynomial {
 public:
  HomogeneousPolynomial() = default;
  HomogeneousPolynomial(int vars, int degree) : vars_(vars), degree_(degree) {
    if (vars < 1 || degree < 0) throw std::invalid_argument("bad polynomial shape");
  }

  int vars() const { return vars_; }
  int degree() const { return degree_; }
  const std::map<ExponentVec, Scalar>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool all_rational() const {
    for (const auto& [e, c] : terms_)
      if (!c.is_rational()) return false;
    return true;
  }

  void check_exponent(const ExponentVec& e) const {
    if (static_cast<int>(e.size()) != vars_) throw std::invalid_argument("exponent arity mismatch");
    int sum = 0;
    for (int x : e) {
      if (x < 0) throw std::invalid_argument("negative exponent");
      sum += x;
    }
    if (sum != degree_) throw std::invalid_argument("exponent degree mismatch");
  }

  void add(const ExponentVec& e, const Scalar& c) {
    check_exponent(e);
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void set(const ExponentVec& e, const Scalar& c) {
    check_exponent(e);
    if (c.is_zero()) terms_.erase(e);
    else terms_[e] = c;
  }

  Scalar at(const ExponentVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar::zero() : it->second;
  }

  HomogeneousPolynomial scaled(const Scalar& c) const {
    HomogeneousPolynomial r(vars_, degree_);
    if (c.is_zero()) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
  }

  friend HomogeneousPolynomial operator+(const HomogeneousPolynomial& a,
                                         const HomogeneousPolynomial& b) {
    if (a.vars_ != b.vars_ || a.degree_ != b.degree_)
      throw std::invalid_argument("polynomial sum shape mismatch");
    HomogeneousPolynomial r = a;
    for (const auto& [e, c] : b.terms_) r.add(e, c);
    return r;
  }

  friend HomogeneousPolynomial operator*(const HomogeneousPolynomial& a,
                                         const HomogeneousPolynomial& b) {
    if (a.vars_ != b.vars_) throw std::invalid_argument("polynomial product variable mismatch");
    HomogeneousPolynomial r(a.vars_, a.degree_ + b.degree_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        ExponentVec e(ea);
        for (int i = 0; i < a.vars_; ++i) e[i] += eb[i];
        r.add(e, ca * cb);
      }
    return r;
  }

  friend bool operator==(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
    return a.vars_ == b.vars_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  Scalar evaluate(const std::vector<Scalar>& point) const {
    if (static_cast<int>(point.size()) != vars_)
      throw std::invalid_argument("evaluation point arity mismatch");
    Scalar s = Scalar::zero();
    for (const auto& [e, c] : terms_) {
      Scalar t = c;
      for (int i = 0; i < vars_; ++i) t = t * scalar_pow(point[i], e[i]);
      s += t;
    }
    return s;
  }

  double norm() const {
    double s = 0;
    for (const auto& [e, c] : terms_) {
      double m = c.abs();
      s += m * m;
    }
    return std::sqrt(s);
  }

  void chop(double eps) {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (!it->second.is_rational() && it->second.abs() < eps) it = terms_.erase(it);
      else ++it;
    }
  }

 private:
  int vars_ = 0, degree_ = 0;
  std::map<ExponentVec, Scalar> terms_;
};

// A linear form sum_i c_i x_i, stored as its coefficient vector.
using LinearForm = std::vector<Scalar>;

inline HomogeneousPolynomial poly_of_form(const LinearForm& f) {
  HomogeneousPolynomial p(static_cast<int>(f.size()), 1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    ExponentVec e(f.size(), 0);
    e[i] = 1;
    p.add(e, f[i]);
  }
  return p;
}

// Multinomial expansion of (sum_i c_i x_i)^degree.
inline HomogeneousPolynomial expand_power(const LinearForm& f, int degree) {
  const int vars = static_cast<int>(f.size());
  if (vars < 1) throw std::invalid_argument("empty linear form");
  if (degree < 0) throw std::invalid_argument("negative power");
  std::vector<int> support;
  for (int i = 0; i < vars; ++i)
    if (!f[i].is_zero()) support.push_back(i);
  HomogeneousPolynomial p(vars, degree);
  if (support.empty()) {
    if (degree == 0) p.add(ExponentVec(vars, 0), Scalar::one());
    return p;
  }
  ExponentVec e(vars, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t si, int left) {
    if (si + 1 == support.size()) {
      e[support[si]] = left;
      Scalar c(multinomial(degree, [&] {
        ExponentVec es;
        for (int i : support) es.push_back(e[i]);
        return es;
      }()));
      for (int i : support) c = c * scalar_pow(f[i], e[i]);
      p.add(e, c);
      e[support[si]] = 0;
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[support[si]] = k;
      rec(si + 1, left - k);
    }
    e[support[si]] = 0;
  };
  rec(0, degree);
  return p;
}

// Substitute x_i -> forms[i] (all forms over a common new variable set).
inline HomogeneousPolynomial substitute(const HomogeneousPolynomial& p,
                                        const std::vector<LinearForm>& forms) {
  if (static_cast<int>(forms.size()) != p.vars())
    throw std::invalid_argument("substitution arity mismatch");
  if (forms.empty()) throw std::invalid_argument("empty substitution");
  const int new_vars = static_cast<int>(forms[0].size());
  for (const auto& f : forms)
    if (static_cast<int>(f.size()) != new_vars)
      throw std::invalid_argument("substitution forms differ in arity");
  HomogeneousPolynomial r(new_vars, p.degree());
  for (const auto& [e, c] : p.terms()) {
    HomogeneousPolynomial t(new_vars, 0);
    t.add(ExponentVec(new_vars, 0), c);
    for (int i = 0; i < p.vars(); ++i)
      if (e[i] > 0) t = t * expand_power(forms[i], e[i]);
    r = r + t;
  }
  return r;
}

// All exponent vectors of the given degree, ascending lex order.
inline std::vector<ExponentVec> monomials_of_degree(int vars, int degree) {
  std::vector<ExponentVec> out;
  ExponentVec e(vars, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i + 1 == vars) {
      e[i] = left;
      out.push_back(e);
      e[i] = 0;
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  if (vars >= 1) rec(0, degree);
  return out;
}

// Relative L2 coefficient distance ||a - b|| / ||b||.
inline double rel_poly_distance(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
  HomogeneousPolynomial d = a + b.scaled(Scalar(-1));
  double ref = b.norm();
  return ref == 0 ? d.norm() : d.norm() / ref;
}

}  // namespace symrank
