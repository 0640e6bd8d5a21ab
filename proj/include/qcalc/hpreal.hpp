#pragma once

#include <compare>
#include <string>

#include <mpfr.h>

#include "qcalc/rational.hpp"

namespace qcalc {

/// Bits of binary precision needed for `digits` decimal digits plus guard bits.
unsigned bits_for_digits(int digits);

/// Arbitrary-precision real backed by MPFR. Every value owns its precision;
/// binary operations produce the larger precision of their operands, so mixing
/// values never drops below the precision a computation was started with.
class HPReal {
 public:
  HPReal();
  HPReal(long v, unsigned bits);
  HPReal(const Rational& v, unsigned bits);
  HPReal(double v, unsigned bits);
  HPReal(const HPReal& o);
  HPReal(HPReal&& o) noexcept;
  HPReal& operator=(const HPReal& o);
  HPReal& operator=(HPReal&& o) noexcept;
  ~HPReal();

  static HPReal parse(const std::string& text, unsigned bits);

  unsigned bits() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }
  int digits10() const;
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Scientific notation with `digits` significant digits.
  std::string str(int digits) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  HPReal abs() const;
  HPReal sqrt() const;
  HPReal pow(long e) const;

  HPReal operator-() const;
  HPReal& operator+=(const HPReal& o);
  HPReal& operator-=(const HPReal& o);
  HPReal& operator*=(const HPReal& o);
  HPReal& operator/=(const HPReal& o);
  HPReal& operator+=(long o);
  HPReal& operator-=(long o);
  HPReal& operator*=(long o);
  HPReal& operator/=(long o);

  friend HPReal operator+(HPReal a, const HPReal& b) { return a += b; }
  friend HPReal operator-(HPReal a, const HPReal& b) { return a -= b; }
  friend HPReal operator*(HPReal a, const HPReal& b) { return a *= b; }
  friend HPReal operator/(HPReal a, const HPReal& b) { return a /= b; }
  friend HPReal operator+(HPReal a, long b) { return a += b; }
  friend HPReal operator-(HPReal a, long b) { return a -= b; }
  friend HPReal operator*(HPReal a, long b) { return a *= b; }
  friend HPReal operator/(HPReal a, long b) { return a /= b; }
  friend HPReal operator+(long a, HPReal b) { return b += a; }
  friend HPReal operator-(long a, const HPReal& b);
  friend HPReal operator*(long a, HPReal b) { return b *= a; }

  friend bool operator==(const HPReal& a, const HPReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const HPReal& a, const HPReal& b);

  mpfr_srcptr raw() const { return v_; }

 private:
  void raise_precision(unsigned bits);

  mpfr_t v_;
};

}  // namespace qcalc
