#include "qcalc/qfunc.hpp"

namespace qcalc {

TruncatedSeries phi_series(const PhiSpec<Rational>& spec, const std::string& xvar,
                           const std::string& yvar, const Rational& q, VarSetPtr vars, int order) {
  if (spec.n < 0) throw QError(ErrorCode::IndexOutOfRange, "Phi_n needs n >= 0");
  if (spec.n > order) throw QError(ErrorCode::OrderTooSmall, "Phi_n does not fit in the truncation order");
  const size_t xi = vars->index_of(xvar), yi = vars->index_of(yvar);
  if (xi == yi) throw QError(ErrorCode::PreconditionViolated, "x and y must be distinct variables");
  TruncatedSeries out(vars, order);
  const int n = spec.n;
  std::vector<Rational> binom = qbinomial_row(n, q);
  for (int k = 0; k <= n; ++k) {
    SeriesIndex idx(vars->size(), 0);
    idx[xi] = k;
    idx[yi] = n - k;
    out.add_term(idx, binom[k] * qpoch_finite(spec.alpha, q, k) * qpoch_finite(spec.beta, q, n - k));
  }
  return out;
}

HPReal phi_majorant(int n, const HPReal& alpha, const HPReal& beta, const HPReal& x, const HPReal& y,
                    const HPReal& q) {
  PhiSpec<HPReal> spec{n, -alpha.abs(), -beta.abs()};
  return phi_eval(spec, x.abs(), y.abs(), q.abs());
}

}  // namespace qcalc

namespace qcalc {

HPReal majorant_product(const std::vector<HPReal>& plus, const std::vector<HPReal>& minus, const HPReal& p,
                        const EvalContext& ctx) {
  const unsigned bits = ctx.bits();
  EvalContext tight = ctx;
  tight.tail_epsilon = std::ldexp(1.0, -static_cast<int>(bits) + 4);
  tight.max_terms = std::max(ctx.max_terms, 100000);
  const HPReal pp = p.abs();
  HPReal result(1L, bits);
  for (const HPReal& m : plus) {
    Bounded<HPReal> f = qpoch_infinite(-m.abs(), pp, tight);
    result *= f.value + HPReal(f.abs_error, bits);
  }
  for (const HPReal& m : minus) {
    if (!(m.abs() < HPReal(1L, bits)))
      throw QError(ErrorCode::PreconditionViolated, "majorant needs moduli below 1");
    Bounded<HPReal> f = qpoch_infinite(m.abs(), pp, tight);
    HPReal lower = f.value - HPReal(f.abs_error, bits);
    if (!(lower.sign() > 0)) throw QError(ErrorCode::PreconditionViolated, "majorant denominator not positive");
    result /= lower;
  }
  return result;
}

Bounded<HPComplex> ratio_tail_sum(const std::function<HPComplex(int)>& term, const EvalContext& ctx) {
  constexpr int kMinTerms = 8;
  std::vector<double> mags;
  HPComplex sum(0L, ctx.bits());
  for (int n = 0;; ++n) {
    HPComplex t = term(n);
    sum += t;
    mags.push_back(t.magnitude());
    if (n + 1 >= kMinTerms) {
      double rho = 0.0;
      bool all_zero = true;
      const size_t from = mags.size() - std::max<size_t>(mags.size() / 4, 2);
      for (size_t i = from; i < mags.size(); ++i) {
        if (mags[i] != 0.0) all_zero = false;
        if (i + 1 < mags.size() && mags[i] > 0.0 && mags[i + 1] > 0.0)
          rho = std::max(rho, mags[i + 1] / mags[i]);
      }
      double tail = all_zero ? 0.0 : (rho < 1.0 ? mags.back() * rho / (1.0 - rho) : INFINITY);
      if (tail <= ctx.tail_epsilon * sum.magnitude()) return {sum, tail, n + 1};
    }
    if (n >= ctx.max_terms) throw QError(ErrorCode::TailNotConverged, "series did not reach the tail target");
  }
}

}  // namespace qcalc
