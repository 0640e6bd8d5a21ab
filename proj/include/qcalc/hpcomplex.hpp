#pragma once

#include <string>

#include "qcalc/hpreal.hpp"
#include "qcalc/rational.hpp"

namespace qcalc {

/// High-precision complex scalar used by the numeric backend.
class HPComplex {
 public:
  HPComplex() = default;
  HPComplex(HPReal re, HPReal im);
  explicit HPComplex(HPReal re);
  HPComplex(long re, unsigned bits);
  HPComplex(const Rational& re, unsigned bits);
  HPComplex(const Rational& re, const Rational& im, unsigned bits);

  const HPReal& real() const { return re_; }
  const HPReal& imag() const { return im_; }
  unsigned bits() const { return std::max(re_.bits(), im_.bits()); }
  int precision_digits() const;

  HPReal abs() const;
  /// |z| rounded to double; used only for bound bookkeeping.
  double magnitude() const;
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  bool is_real() const { return im_.is_zero(); }
  HPComplex conj() const { return {re_, -im_}; }
  HPComplex pow(long e) const;
  /// "re" for real values, "re,im" otherwise.
  std::string str(int digits) const;

  HPComplex operator-() const { return {-re_, -im_}; }
  HPComplex& operator+=(const HPComplex& o);
  HPComplex& operator-=(const HPComplex& o);
  HPComplex& operator*=(const HPComplex& o);
  HPComplex& operator/=(const HPComplex& o);
  HPComplex& operator*=(const HPReal& o);

  friend HPComplex operator+(HPComplex a, const HPComplex& b) { return a += b; }
  friend HPComplex operator-(HPComplex a, const HPComplex& b) { return a -= b; }
  friend HPComplex operator*(HPComplex a, const HPComplex& b) { return a *= b; }
  friend HPComplex operator/(HPComplex a, const HPComplex& b) { return a /= b; }
  friend HPComplex operator*(HPComplex a, const HPReal& b) { return a *= b; }
  friend bool operator==(const HPComplex& a, const HPComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  HPReal re_;
  HPReal im_;
};

}  // namespace qcalc
