#pragma once

#include <optional>
#include <string>

#include "qcalc/hpcomplex.hpp"
#include "qcalc/rational.hpp"
#include "qcalc/scalar.hpp"

namespace qcalc {

/// Evaluation policy for the numeric backend. Construct through `make`, which
/// enforces |q| < 1, tail_epsilon >= 10^(5 - precision_digits) and
/// max_terms >= 16.
struct EvalContext {
  HPComplex q;
  std::optional<Rational> q_exact;  // set when q was given as a rational
  int precision_digits = 50;
  double tail_epsilon = 1e-45;
  int max_terms = 5000;

  static constexpr int kMinDigits = 30;
  static constexpr int kMaxDigits = 250;  // bounds are kept in double range
  static constexpr int kDefaultMaxTerms = 5000;

  static EvalContext make(const Rational& q, int digits = 50,
                          std::optional<double> tail_epsilon = std::nullopt,
                          int max_terms = kDefaultMaxTerms);
  static EvalContext make(const HPComplex& q, int digits = 50,
                          std::optional<double> tail_epsilon = std::nullopt,
                          int max_terms = kDefaultMaxTerms);

  unsigned bits() const;
  HPComplex lift(const Rational& v) const { return HPComplex(v, bits()); }
  HPComplex lift(const Rational& re, const Rational& im) const { return HPComplex(re, im, bits()); }
  /// Factors smaller than this in modulus count as zero denominators.
  double zero_threshold() const;
  /// Same context with a different tail target (validated).
  EvalContext with_tail_epsilon(double eps) const;
};

/// A numeric value together with an absolute bound on the neglected tail and
/// the number of terms or factors that were used.
template <class S>
struct Bounded {
  S value;
  double abs_error = 0.0;
  int terms = 0;

  double rel_error() const {
    double m = magnitude(value);
    return m > 0 ? abs_error / m : (abs_error == 0 ? 0.0 : INFINITY);
  }
};

/// Propagated bound for the product of two bounded values.
template <class S>
Bounded<S> operator*(const Bounded<S>& x, const Bounded<S>& y) {
  double mx = magnitude(x.value), my = magnitude(y.value);
  return {x.value * y.value, mx * y.abs_error + my * x.abs_error + x.abs_error * y.abs_error,
          x.terms + y.terms};
}

/// Propagated bound for a quotient; the denominator bound must be smaller
/// than the denominator itself.
template <class S>
Bounded<S> operator/(const Bounded<S>& x, const Bounded<S>& y) {
  double mx = magnitude(x.value), my = magnitude(y.value);
  double err = (my > y.abs_error) ? (x.abs_error + mx * y.abs_error / my) / (my - y.abs_error)
                                  : INFINITY;
  return {x.value / y.value, err, x.terms + y.terms};
}

template <class S>
Bounded<S> operator+(const Bounded<S>& x, const Bounded<S>& y) {
  return {x.value + y.value, x.abs_error + y.abs_error, x.terms + y.terms};
}

template <class S>
Bounded<S> operator-(const Bounded<S>& x, const Bounded<S>& y) {
  return {x.value - y.value, x.abs_error + y.abs_error, x.terms + y.terms};
}

template <class S>
Bounded<S> exact(const S& v) {
  return {v, 0.0, 0};
}

}  // namespace qcalc
