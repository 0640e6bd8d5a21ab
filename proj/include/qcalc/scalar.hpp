#pragma once

#include <cmath>
#include <concepts>
#include <type_traits>

#include "qcalc/hpcomplex.hpp"
#include "qcalc/hpreal.hpp"
#include "qcalc/rational.hpp"

namespace qcalc {

// Generic code builds constants from an existing value so that high-precision
// scalars inherit the precision of their inputs.

inline Rational one_like(const Rational&) { return Rational(1); }
inline HPReal one_like(const HPReal& r) { return HPReal(1L, r.bits()); }
inline HPComplex one_like(const HPComplex& z) { return HPComplex(1L, z.bits()); }
inline double one_like(double) { return 1.0; }

inline Rational zero_like(const Rational&) { return Rational(0); }
inline HPReal zero_like(const HPReal& r) { return HPReal(0L, r.bits()); }
inline HPComplex zero_like(const HPComplex& z) { return HPComplex(0L, z.bits()); }
inline double zero_like(double) { return 0.0; }

inline Rational from_rational_like(const Rational& v, const Rational&) { return v; }
inline HPReal from_rational_like(const Rational& v, const HPReal& r) { return HPReal(v, r.bits()); }
inline HPComplex from_rational_like(const Rational& v, const HPComplex& z) { return HPComplex(v, z.bits()); }
inline double from_rational_like(const Rational& v, double) { return v.to_double(); }

/// Modulus rounded to double, for bound bookkeeping only.
inline double magnitude(const Rational& v) { return std::fabs(v.to_double()); }
inline double magnitude(const HPReal& v) { return std::fabs(v.to_double()); }
inline double magnitude(const HPComplex& v) { return v.magnitude(); }
inline double magnitude(double v) { return std::fabs(v); }

inline bool is_zero(const Rational& v) { return v.is_zero(); }
inline bool is_zero(const HPReal& v) { return v.is_zero(); }
inline bool is_zero(const HPComplex& v) { return v.is_zero(); }
inline bool is_zero(double v) { return v == 0.0; }

inline bool is_finite(const Rational&) { return true; }
inline bool is_finite(const HPReal& v) { return v.is_finite(); }
inline bool is_finite(const HPComplex& v) { return v.is_finite(); }
inline bool is_finite(double v) { return std::isfinite(v); }

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

template <class S>
concept QScalar = requires(const S& a, const S& b) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { one_like(a) } -> std::convertible_to<S>;
  { magnitude(a) } -> std::convertible_to<double>;
};

/// a^e for integer e >= 0 by repeated squaring.
template <QScalar S>
S ipow(const S& a, long e) {
  S result = one_like(a);
  S base = a;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

}  // namespace qcalc
