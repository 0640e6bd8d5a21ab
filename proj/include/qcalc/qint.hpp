#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "qcalc/context.hpp"
#include "qcalc/qcore.hpp"
#include "qcalc/qfunc.hpp"
#include "qcalc/qop.hpp"

namespace qcalc {

/// The context's base q in scalar type S.
template <QScalar S>
S context_q(const EvalContext& ctx) {
  if constexpr (std::is_same_v<S, HPComplex>) {
    return ctx.q;
  } else if constexpr (std::is_same_v<S, HPReal>) {
    return ctx.q.real();
  } else {
    if (!ctx.q_exact) throw QError(ErrorCode::InvalidContext, "context q is not rational");
    return from_rational_like(*ctx.q_exact, S{});
  }
}

template <QScalar S>
struct QIntegral {
  SampledFunction<S> integrand;
  S lower;
  S upper;
  EvalContext ctx;
  /// Optional fail-fast scan of all grid points endpoint*q^n for vanishing
  /// denominator factors; called once per nonzero endpoint before summing.
  std::function<void(const S& endpoint)> grid_check;
  /// Relative error of each integrand evaluation (e.g. from truncated products).
  double integrand_rel_error = 0.0;
};

/// Grid samples of a Jackson integral: b f(b q^n) q^n and a f(a q^n) q^n for
/// n < terms, plus the empirical tail bound of the plain integral.
template <QScalar S>
struct JacksonSamples {
  std::vector<S> upper_points, lower_points;     // b q^n, a q^n
  std::vector<S> upper_weighted, lower_weighted; // (1-q) b f(b q^n) q^n, (1-q) a f(a q^n) q^n
  double tail = 0.0;
  double sampling_error = 0.0;  // from integrand_rel_error
  double ratio = 0.0;           // decay ratio used in the tail estimate
  int terms = 0;
};

/// Samples the defining sum (1-q) sum_n [b f(b q^n) - a f(a q^n)] q^n until the
/// tail estimate |t_N| rho/(1-rho) drops below tail_epsilon |sum|, where rho is
/// the largest consecutive-term ratio over the last quarter of the computed
/// terms, clamped to at least |q|.
template <QScalar S>
JacksonSamples<S> jackson_samples(const QIntegral<S>& qi) {
  const EvalContext& ctx = qi.ctx;
  const S q = context_q<S>(ctx);
  const S& a = qi.lower;
  const S& b = qi.upper;
  const bool use_a = !is_zero(a), use_b = !is_zero(b);
  if (qi.grid_check) {
    if (use_b) qi.grid_check(b);
    if (use_a) qi.grid_check(a);
  }
  const double qm = magnitude(q);
  const S one = one_like(q);
  const S w = one - q;
  constexpr int kMinTerms = 8;

  JacksonSamples<S> out;
  std::vector<double> mags;
  S sum = zero_like(q);
  S qn = one;
  S bq = b, aq = a;
  double abs_sum = 0.0;
  for (int n = 0;; ++n) {
    S term = zero_like(q);
    S ub = zero_like(q), ua = zero_like(q);
    if (use_b) {
      S fb = qi.integrand(bq);
      if (!is_finite(fb)) throw QError(ErrorCode::IntegrandUndefined, "integrand not finite on the grid");
      ub = w * b * fb * qn;
    }
    if (use_a) {
      S fa = qi.integrand(aq);
      if (!is_finite(fa)) throw QError(ErrorCode::IntegrandUndefined, "integrand not finite on the grid");
      ua = w * a * fa * qn;
    }
    term = ub - ua;
    abs_sum += magnitude(ub) + magnitude(ua);
    out.upper_points.push_back(bq);
    out.lower_points.push_back(aq);
    out.upper_weighted.push_back(ub);
    out.lower_weighted.push_back(ua);
    sum = sum + term;
    mags.push_back(magnitude(term));
    bq = bq * q;
    aq = aq * q;
    qn = qn * q;

    if (n + 1 >= kMinTerms) {
      double rho = qm;
      const size_t from = mags.size() - std::max<size_t>(mags.size() / 4, 2);
      bool all_zero = true;
      for (size_t i = from; i < mags.size(); ++i) {
        if (mags[i] != 0.0) all_zero = false;
        if (i + 1 < mags.size() && mags[i] > 0.0 && mags[i + 1] > 0.0)
          rho = std::max(rho, mags[i + 1] / mags[i]);
      }
      double tail = all_zero ? 0.0 : (rho < 1.0 ? mags.back() * rho / (1.0 - rho) : INFINITY);
      if (tail <= ctx.tail_epsilon * magnitude(sum)) {
        out.tail = tail;
        out.ratio = rho;
        out.terms = n + 1;
        out.sampling_error = abs_sum * qi.integrand_rel_error;
        return out;
      }
    }
    if (n >= ctx.max_terms)
      throw QError(ErrorCode::TailNotConverged, "Jackson integral did not reach the tail target");
  }
}

/// (1-q) sum_n [b f(b q^n) - a f(a q^n)] q^n with an empirical tail bound.
template <QScalar S>
Bounded<S> jackson_integral(const QIntegral<S>& qi) {
  JacksonSamples<S> s = jackson_samples(qi);
  S sum = zero_like(qi.upper);
  for (int n = 0; n < s.terms; ++n) sum = sum + (s.upper_weighted[n] - s.lower_weighted[n]);
  return {sum, s.tail + s.sampling_error, s.terms};
}

/// int_a^b z^power f(z) d_q z from existing samples of f, for power >= 0.
template <QScalar S>
S jackson_moment(const JacksonSamples<S>& s, int power) {
  S sum = zero_like(s.upper_weighted.at(0));
  for (int n = 0; n < s.terms; ++n)
    sum = sum + s.upper_weighted[n] * ipow(s.upper_points[n], power) -
          s.lower_weighted[n] * ipow(s.lower_points[n], power);
  return sum;
}

/// z^power prod_i (num_i z; q)_oo / prod_j (den_j z; q)_oo.
struct ProductIntegrand {
  std::vector<HPComplex> numer;
  std::vector<HPComplex> denom;
  int power = 0;

  HPComplex operator()(const HPComplex& z, const EvalContext& ctx) const;
  /// Throws ZeroDenominator if some factor 1 - den_j e q^i is below the
  /// context's zero threshold for any i >= 0.
  void check_grid(const HPComplex& endpoint, const EvalContext& ctx) const;
  /// Relative error bound of one evaluation from the truncated products.
  double rel_error(const EvalContext& ctx) const;

  QIntegral<HPComplex> integral(const HPComplex& lower, const HPComplex& upper,
                                const EvalContext& ctx) const;
};

// Closed-form right-hand sides. Every denominator product is guarded against
// vanishing factors (ZeroDenominator).

/// (1-q) y (q, x/y, qy/x, ab, acx, bcy; q)_oo / (ax/y, by/x, a, b, cx, cy; q)_oo,
/// requiring max{|a|,|b|,|cx|,|cy|,|ax/y|,|by/x|} < 1.
Bounded<HPComplex> rhs_alsalam_verma(const HPComplex& x, const HPComplex& y, const HPComplex& a,
                                     const HPComplex& b, const HPComplex& c, const EvalContext& ctx);

/// (1-q) v (q, u/v, qv/u, cduv; q)_oo / (cu, cv, du, dv; q)_oo.
Bounded<HPComplex> rhs_andrews_askey(const HPComplex& u, const HPComplex& v, const HPComplex& c,
                                     const HPComplex& d, const EvalContext& ctx);

/// Andrews-Askey product times sum_j [n j] (cv, dv; q)_j / (cduv; q)_j u^j v^{n-j}.
Bounded<HPComplex> rhs_wang_moment(const HPComplex& u, const HPComplex& v, const HPComplex& c,
                                   const HPComplex& d, int n, const EvalContext& ctx);

/// Andrews-Askey product times
///   sum_n Phi_n^(alpha,beta)(a,b|q)/(q;q)_n sum_j [n j] (cv,dv;q)_j/(cduv;q)_j u^j v^{n-j}.
/// The outer series uses a majorant tail bound when |cduv| < 1 and
/// |a|(|u|+|v|), |b|(|u|+|v|) < 1 (`certified` set to true); otherwise it
/// falls back to the observed-ratio estimate used for q-integrals.
Bounded<HPComplex> rhs_liu_qint(const HPComplex& u, const HPComplex& v, const HPComplex& a,
                                const HPComplex& b, const HPComplex& c, const HPComplex& d,
                                const HPComplex& alpha, const HPComplex& beta,
                                const EvalContext& ctx, bool* certified = nullptr);

/// Phi_k^(a,b)(x,y|q) through its q-integral representation
///   (ab;q)_k (a,b,by/x,ax/y;q)_oo / ((1-q) y (q,ab,x/y,qy/x;q)_oo)
///     * int_x^y (qz/x, qz/y; q)_oo z^k / (bz/x, az/y; q)_oo d_q z.
Bounded<HPComplex> phi_qint_representation(int k, const HPComplex& a, const HPComplex& b,
                                           const HPComplex& x, const HPComplex& y,
                                           const EvalContext& ctx);

/// h_k(x,y|q) = 1/((1-q) y (q, x/y, qy/x; q)_oo) int_x^y (qz/x, qz/y; q)_oo z^k d_q z.
Bounded<HPComplex> rs_qint_representation(int k, const HPComplex& x, const HPComplex& y,
                                          const EvalContext& ctx);

}  // namespace qcalc
