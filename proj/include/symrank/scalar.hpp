#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace symrank {

using Rational = mpq_class;
using Complex = std::complex<double>;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

// Exact-or-float scalar. Arithmetic between two rationals stays exact; any
// operation touching the float variant yields a float. The two backends are
// never mixed silently inside one value.
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(const Rational& q) : v_(q) {}
  Scalar(Rational&& q) : v_(std::move(q)) {}
  Scalar(const Complex& z) : v_(z) {}
  Scalar(long n) : v_(Rational(n)) {}
  Scalar(int n) : v_(Rational(n)) {}
  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }

  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  const Rational& rational() const { return std::get<Rational>(v_); }

  Complex to_complex() const {
    if (is_rational()) return Complex(std::get<Rational>(v_).get_d(), 0.0);
    return std::get<Complex>(v_);
  }

  bool is_zero() const {
    if (is_rational()) return sgn(std::get<Rational>(v_)) == 0;
    const Complex& z = std::get<Complex>(v_);
    return z.real() == 0.0 && z.imag() == 0.0;
  }

  double abs() const { return std::abs(to_complex()); }

  Scalar conj() const {
    if (is_rational()) return *this;
    return Scalar(std::conj(std::get<Complex>(v_)));
  }

  Scalar operator-() const {
    if (is_rational()) return Scalar(Rational(-std::get<Rational>(v_)));
    return Scalar(-std::get<Complex>(v_));
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational())
      return Scalar(Rational(a.rational() + b.rational()));
    return Scalar(a.to_complex() + b.to_complex());
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational())
      return Scalar(Rational(a.rational() * b.rational()));
    return Scalar(a.to_complex() * b.to_complex());
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw std::domain_error("scalar division by zero");
    if (a.is_rational() && b.is_rational())
      return Scalar(Rational(a.rational() / b.rational()));
    return Scalar(a.to_complex() / b.to_complex());
  }
  Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
  Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

  // Exact equality for same-backend values; cross-backend compares as floats.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational()) return a.rational() == b.rational();
    return a.to_complex() == b.to_complex();
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  std::variant<Rational, Complex> v_;
};

inline Scalar inv(const Scalar& s) { return Scalar(1) / s; }

}  // namespace symrank
