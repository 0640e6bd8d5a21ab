#pragma once

#include <span>
#include <string>
#include <vector>

#include "qcalc/context.hpp"
#include "qcalc/error.hpp"
#include "qcalc/scalar.hpp"

namespace qcalc {

/// Tag selecting the infinite q-shifted factorial.
struct Infinity {};
inline constexpr Infinity kInfinity{};

/// (a;q)_n = prod_{k<n} (1 - a q^k). Exact for rational inputs.
template <QScalar S>
S qpoch_finite(const S& a, const S& q, int n) {
  if (n < 0) throw QError(ErrorCode::NegativeIndexUndefined, "qpoch_finite needs n >= 0");
  S one = one_like(a);
  S result = one;
  S aqk = a;
  for (int k = 0; k < n; ++k) {
    result = result * (one - aqk);
    aqk = aqk * q;
  }
  return result;
}

/// (a;q)_oo truncated after K factors, where K is the first index with
/// s = |a||q|^K / (1-|q|) satisfying s/(1-s) <= tail_epsilon. The neglected
/// factors multiply the partial product by T with |T - 1| <= e^s - 1 <= s/(1-s),
/// which is what `abs_error` reports (relative to the partial product).
template <QScalar S>
Bounded<S> qpoch_infinite(const S& a, const S& q, const EvalContext& ctx) {
  const double qm = magnitude(q);
  if (!(qm < 1.0)) throw QError(ErrorCode::PreconditionViolated, "(a;q)_oo needs |q| < 1");
  S one = one_like(a);
  S product = one;
  if (is_zero(a)) return {product, 0.0, 0};
  S aqk = a;
  double tail = magnitude(a);  // |a||q|^k
  for (int k = 0;; ++k) {
    double s = tail / (1.0 - qm) * (1.0 + 1e-12);
    if (s < 1.0 && s / (1.0 - s) <= ctx.tail_epsilon)
      return {product, magnitude(product) * s / (1.0 - s), k};
    if (k >= ctx.max_terms)
      throw QError(ErrorCode::TailNotConverged,
                   "(a;q)_oo did not reach the tail target within max_terms factors");
    product = product * (one - aqk);
    aqk = aqk * q;
    tail *= qm;
  }
}

inline Bounded<HPComplex> qpoch_infinite(const HPComplex& a, const EvalContext& ctx) {
  return qpoch_infinite(a, ctx.q, ctx);
}

inline Bounded<HPComplex> qpoch_infinite(const Rational& a, const EvalContext& ctx) {
  return qpoch_infinite(ctx.lift(a), ctx.q, ctx);
}

/// Throws ZeroDenominator when some factor 1 - a q^j of (a;q)_oo is smaller in
/// modulus than `threshold`. Only factors with |a q^j| >= 1/2 can vanish, so the
/// scan stops there.
template <QScalar S>
void require_nonvanishing(const S& a, const S& q, double threshold, const std::string& what) {
  const double qm = magnitude(q);
  S one = one_like(a);
  S aqj = a;
  double m = magnitude(a);
  for (int j = 0; m >= 0.5; ++j) {
    S factor = one - aqj;
    if (is_zero(factor) || magnitude(factor) < threshold)
      throw QError(ErrorCode::ZeroDenominator,
                   "vanishing factor in (" + what + ";q) at index " + std::to_string(j));
    if (qm >= 1.0 && j > 100000) break;
    aqj = aqj * q;
    m *= qm;
  }
}

/// 1/(a;q)_oo with the zero-factor guard applied first.
template <QScalar S>
Bounded<S> qpoch_infinite_recip(const S& a, const S& q, const EvalContext& ctx,
                                const std::string& what = "a") {
  require_nonvanishing(a, q, ctx.zero_threshold(), what);
  Bounded<S> p = qpoch_infinite(a, q, ctx);
  return exact(one_like(a)) / p;
}

/// (a_1,...,a_m;q)_n.
template <QScalar S>
S qpoch_multi(std::span<const S> as, const S& q, int n) {
  S result = one_like(q);
  for (const S& a : as) result = result * qpoch_finite(a, q, n);
  return result;
}

/// (a_1,...,a_m;q)_oo; relative bounds compose multiplicatively.
template <QScalar S>
Bounded<S> qpoch_multi(std::span<const S> as, const S& q, Infinity, const EvalContext& ctx) {
  Bounded<S> result = exact(one_like(q));
  for (const S& a : as) result = result * qpoch_infinite(a, q, ctx);
  return result;
}

/// 1/(a;q)_n. For n < 0 only the case a == q is defined, and it is 0: the
/// reciprocal-factorial vanishing convention 1/(q;q)_n = 0 for n < 0.
template <QScalar S>
S qpoch_recip(const S& a, const S& q, int n, double threshold = 0.0) {
  if (n < 0) {
    if (a == q) return zero_like(a);
    throw QError(ErrorCode::NegativeIndexUndefined, "1/(a;q)_n with n < 0 is defined only for a = q");
  }
  S p = qpoch_finite(a, q, n);
  if (is_zero(p) || magnitude(p) <= threshold)
    throw QError(ErrorCode::ZeroDenominator, "(a;q)_n vanishes");
  return one_like(a) / p;
}

/// Gaussian binomial [n k]_q via the product prod_{i=1}^{k} (1-q^{n-k+i})/(1-q^i).
/// Out-of-range k gives 0.
template <QScalar S>
S qbinomial(int n, int k, const S& q) {
  if (n < 0 || k < 0 || k > n) return zero_like(q);
  k = std::min(k, n - k);
  S one = one_like(q);
  S num = one, den = one;
  S qi = q;                          // q^i
  S qnk = ipow(q, n - k + 1);        // q^{n-k+i}
  for (int i = 1; i <= k; ++i) {
    num = num * (one - qnk);
    den = den * (one - qi);
    qi = qi * q;
    qnk = qnk * q;
  }
  if (is_zero(den)) throw QError(ErrorCode::ZeroDenominator, "(q;q)_k vanishes");
  return num / den;
}

/// Row [n 0]_q ... [n n]_q built by the ratio [n k] = [n k-1] (1-q^{n-k+1})/(1-q^k).
template <QScalar S>
std::vector<S> qbinomial_row(int n, const S& q) {
  std::vector<S> row;
  row.reserve(static_cast<size_t>(n) + 1);
  S one = one_like(q);
  row.push_back(one);
  for (int k = 1; k <= n; ++k) {
    S den = one - ipow(q, k);
    if (is_zero(den)) throw QError(ErrorCode::ZeroDenominator, "(q;q)_k vanishes");
    row.push_back(row.back() * (one - ipow(q, n - k + 1)) / den);
  }
  return row;
}

}  // namespace qcalc
