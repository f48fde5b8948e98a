#pragma once
#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace silting {

using Rational = mpq_class;

// Gaussian rational: re + im*sqrt(-1). Exact arithmetic, always canonicalized
// (gmp keeps denominators reduced and positive).
struct Scalar {
  Rational re, im;

  Scalar() : re(0), im(0) {}
  Scalar(long n) : re(n), im(0) {}
  Scalar(const Rational& r) : re(r), im(0) { re.canonicalize(); }
  Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  static Scalar unit_i() { return Scalar(Rational(0), Rational(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_rational() const { return im == 0; }

  Scalar conj() const { return Scalar(re, -im); }
  // conj(a)*a, a nonnegative rational
  Rational norm() const { return re * re + im * im; }

  Scalar operator-() const { return Scalar(-re, -im); }
  Scalar operator+(const Scalar& o) const { return Scalar(re + o.re, im + o.im); }
  Scalar operator-(const Scalar& o) const { return Scalar(re - o.re, im - o.im); }
  Scalar operator*(const Scalar& o) const {
    return Scalar(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  Scalar inv() const {
    if (is_zero()) throw std::domain_error("Scalar: division by zero");
    Rational n = norm();
    return Scalar(re / n, -im / n);
  }
  Scalar operator/(const Scalar& o) const { return *this * o.inv(); }
  Scalar& operator+=(const Scalar& o) { re += o.re; im += o.im; return *this; }
  Scalar& operator-=(const Scalar& o) { re -= o.re; im -= o.im; return *this; }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
  bool operator==(const Scalar& o) const { return re == o.re && im == o.im; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Textual form: `p/q` or `p/q+r/s*i` (also `p/q-r/s*i`); integers drop `/1`.
  std::string str() const;
  static Scalar parse(const std::string& s);
};

}  // namespace silting
