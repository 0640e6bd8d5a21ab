#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "qcalc/context.hpp"
#include "qcalc/fps.hpp"
#include "qcalc/qcore.hpp"

namespace qcalc {

// ---------------------------------------------------------------------------
// Homogeneous Phi polynomials
//
//   Phi_n^(alpha,beta)(x,y|q) = sum_k [n k]_q (alpha;q)_k (beta;q)_{n-k} x^k y^{n-k}

template <QScalar S>
struct PhiSpec {
  int n = 0;
  S alpha;
  S beta;
};

template <QScalar S>
S phi_eval(const PhiSpec<S>& spec, const S& x, const S& y, const S& q) {
  if (spec.n < 0) throw QError(ErrorCode::IndexOutOfRange, "Phi_n needs n >= 0");
  const int n = spec.n;
  const S one = one_like(q);
  std::vector<S> binom = qbinomial_row(n, q);
  // (alpha;q)_k x^k for k = 0..n and (beta;q)_j y^j for j = 0..n
  std::vector<S> ax(static_cast<size_t>(n) + 1, one), by(static_cast<size_t>(n) + 1, one);
  S qk = one;
  for (int k = 1; k <= n; ++k) {
    ax[k] = ax[k - 1] * (one - spec.alpha * qk) * x;
    by[k] = by[k - 1] * (one - spec.beta * qk) * y;
    qk = qk * q;
  }
  S sum = zero_like(q);
  for (int k = 0; k <= n; ++k) sum = sum + binom[k] * ax[k] * by[n - k];
  return sum;
}

template <QScalar S>
S rogers_szego(int n, const S& x, const S& y, const S& q) {
  return phi_eval(PhiSpec<S>{n, zero_like(q), zero_like(q)}, x, y, q);
}

template <QScalar S>
S hahn(int n, const S& alpha, const S& x, const S& y, const S& q) {
  return phi_eval(PhiSpec<S>{n, alpha, zero_like(q)}, x, y, q);
}

template <QScalar S>
S ultraspherical(int n, const S& beta, const S& x, const S& y, const S& q) {
  return phi_eval(PhiSpec<S>{n, beta, beta}, x, y, q);
}

/// Phi_n as an exact series in (xvar, yvar); OrderTooSmall when n > order.
TruncatedSeries phi_series(const PhiSpec<Rational>& spec, const std::string& xvar,
                           const std::string& yvar, const Rational& q, VarSetPtr vars, int order);

/// Upper bound for |Phi_n^(alpha,beta)(x,y|q)| from moduli only:
/// Phi_n^(-|alpha|,-|beta|)(|x|,|y| | |q|), a sum of nonnegative terms.
HPReal phi_majorant(int n, const HPReal& alpha, const HPReal& beta, const HPReal& x, const HPReal& y,
                    const HPReal& q);

/// Upper bound for prod_i (-plus_i; p)_oo / prod_j (minus_j; p)_oo, all
/// arguments nonnegative and minus_j < 1. The products are truncated far
/// below the context's tail target (at the rounding level of its precision)
/// so that subtracting partial sums of matching majorants stays meaningful.
HPReal majorant_product(const std::vector<HPReal>& plus, const std::vector<HPReal>& minus, const HPReal& p,
                        const EvalContext& ctx);

/// Sums term(0) + term(1) + ... until the observed-ratio tail estimate
/// |t_N| rho/(1-rho) is below tail_epsilon |sum|, rho being the largest
/// consecutive ratio over the last quarter of the terms. Used where no
/// a-priori majorant is available.
Bounded<HPComplex> ratio_tail_sum(const std::function<HPComplex(int)>& term, const EvalContext& ctx);

// ---------------------------------------------------------------------------
// Basic hypergeometric series r phi s

/// Exact terminating marker q^{-m}.
struct QPow {
  int m = 0;
};

template <QScalar S>
using HyperParam = std::variant<S, QPow>;

template <QScalar S>
struct HyperSpec {
  std::vector<HyperParam<S>> upper;
  std::vector<HyperParam<S>> lower;
  S argument;
};

namespace detail {

template <QScalar S>
S resolve(const HyperParam<S>& p, const S& q) {
  if (const auto* v = std::get_if<S>(&p)) return *v;
  return one_like(q) / ipow(q, std::get<QPow>(p).m);
}

}  // namespace detail

/// Sum of the series generated by the consecutive-term ratio
///   t_{n+1}/t_n = prod(1-u q^n) / ((1-q^{n+1}) prod(1-l q^n)) * z * (-q^n)^{1+s-r}.
/// Terminating series (an upper QPow) are summed exactly. Otherwise the sum
/// stops at the first n where the ratio bound
///   rho_n = |z| prod(1+|u||q|^n) / ((1-|q|^{n+1}) prod(1-|l||q|^n)) * |q|^{n(1+s-r)}
/// is < 1 and |t_n| rho_n/(1-rho_n) <= tail_epsilon |sum|; rho_n bounds every
/// later ratio because each factor is nonincreasing in n.
template <QScalar S>
Bounded<S> rphis_eval(const HyperSpec<S>& spec, const S& q, const EvalContext& ctx) {
  const int r = static_cast<int>(spec.upper.size());
  const int s = static_cast<int>(spec.lower.size());
  const int e = 1 + s - r;
  const S one = one_like(q);
  const double threshold = is_exact_v<S> ? 0.0 : ctx.zero_threshold();

  int terminate_at = -1;
  for (const auto& u : spec.upper)
    if (const auto* p = std::get_if<QPow>(&u)) {
      if (p->m < 0) throw QError(ErrorCode::PreconditionViolated, "QPow needs m >= 0");
      terminate_at = terminate_at < 0 ? p->m : std::min(terminate_at, p->m);
    }
  if (is_zero(spec.argument)) return {one, 0.0, 1};
  const bool terminating = terminate_at >= 0;
  for (const auto& l : spec.lower)
    if (const auto* p = std::get_if<QPow>(&l))
      if (!terminating || p->m < terminate_at)
        throw QError(ErrorCode::ZeroDenominator, "lower parameter q^{-j} inside the summation range");
  if (!terminating) {
    if constexpr (is_exact_v<S>) {
      throw QError(ErrorCode::PreconditionViolated, "nonterminating series needs the numeric backend");
    }
    if (e < 0) throw QError(ErrorCode::Divergent, "r > s+1 diverges unless terminating");
    if (e == 0 && !(magnitude(spec.argument) < 1.0))
      throw QError(ErrorCode::Divergent, "r = s+1 needs |z| < 1");
  }

  std::vector<S> upper, lower;
  for (const auto& u : spec.upper) upper.push_back(detail::resolve(u, q));
  for (const auto& l : spec.lower) lower.push_back(detail::resolve(l, q));
  std::vector<double> upper_m, lower_m;
  for (const auto& u : upper) upper_m.push_back(magnitude(u));
  for (const auto& l : lower) lower_m.push_back(magnitude(l));
  const double qm = magnitude(q);
  const double zm = magnitude(spec.argument);

  S sum = zero_like(q);
  S term = one;
  S qn = one;  // q^n
  double qmn = 1.0;
  for (int n = 0;; ++n) {
    sum = sum + term;
    if (terminating) {
      if (n == terminate_at) return {sum, 0.0, n + 1};
    } else {
      if (is_zero(term)) return {sum, 0.0, n + 1};
      double rho = zm * std::pow(qmn, e) / (1.0 - qmn * qm);
      bool valid = qmn * qm < 1.0;
      for (double um : upper_m) rho *= 1.0 + um * qmn;
      for (double lm : lower_m) {
        valid = valid && lm * qmn < 1.0;
        rho /= 1.0 - lm * qmn;
      }
      rho *= 1.0 + 1e-12;
      if (valid && rho < 1.0) {
        double tail = magnitude(term) * rho / (1.0 - rho);
        if (tail <= ctx.tail_epsilon * magnitude(sum)) return {sum, tail, n + 1};
      }
      if (n >= ctx.max_terms)
        throw QError(ErrorCode::TailNotConverged, "r phi s did not reach the tail target");
    }
    S num = one, den = one - qn * q;
    for (const auto& u : upper) num = num * (one - u * qn);
    for (const auto& l : lower) den = den * (one - l * qn);
    if (is_zero(den) || magnitude(den) < threshold)
      throw QError(ErrorCode::ZeroDenominator, "vanishing denominator factor at n = " + std::to_string(n));
    term = term * num / den * spec.argument;
    if (e > 0) term = term * ipow(-qn, e);
    if (e < 0) term = term / ipow(-qn, -e);
    qn = qn * q;
    qmn *= qm;
  }
}

// ---------------------------------------------------------------------------
// Shell summation of multi-index series
//
//   sum_{n_1..n_k >= 0} R(n_1+...+n_k) prod_j P_j(n_j)
//
// The inner product depends on the multi-index only through the factors, so
// each total-degree shell C(N) = sum_{|n|=N} prod_j P_j(n_j) is a k-fold
// convolution. The tail after shell N is bounded by
//   R_sup * (prod_j sum_n M_j(n) - sum_{N'<=N} Cmaj(N'))
// where M_j(n) >= |P_j(n)| are nonnegative majorants with known totals and
// R_sup >= sup |R|.

template <QScalar S>
struct ShellSeries {
  std::function<Bounded<S>(int)> outer;                 // R(N) with its own error
  double outer_sup = 1.0;                               // >= sup_N |R(N)|
  std::vector<std::function<S(int)>> factors;           // P_j(n)
  std::vector<std::function<HPReal(int)>> majorants;    // M_j(n) >= |P_j(n)|
  HPReal majorant_total;                                // >= prod_j sum_n M_j(n)
};

template <QScalar S>
Bounded<S> shell_sum(const ShellSeries<S>& series, const EvalContext& ctx) {
  const size_t k = series.factors.size();
  if (k == 0 || series.majorants.size() != k)
    throw QError(ErrorCode::PreconditionViolated, "shell_sum needs matching factors and majorants");
  std::vector<std::vector<S>> p(k), d(k);
  std::vector<std::vector<HPReal>> m(k), dm(k);
  S sum;
  bool have_sum = false;
  HPReal maj_partial(0L, ctx.bits());
  double inner_error = 0.0;
  const double rounding = std::ldexp(1.0, -static_cast<int>(ctx.bits()) + 8);
  for (int n = 0;; ++n) {
    for (size_t j = 0; j < k; ++j) {
      p[j].push_back(series.factors[j](n));
      m[j].push_back(series.majorants[j](n));
    }
    // D_1 = P_1, D_j(n) = sum_i D_{j-1}(i) P_j(n-i)
    d[0].push_back(p[0][n]);
    dm[0].push_back(m[0][n]);
    for (size_t j = 1; j < k; ++j) {
      S acc = zero_like(p[j][0]);
      HPReal accm(0L, ctx.bits());
      for (int i = 0; i <= n; ++i) {
        acc = acc + d[j - 1][i] * p[j][n - i];
        accm += dm[j - 1][i] * m[j][n - i];
      }
      d[j].push_back(acc);
      dm[j].push_back(accm);
    }
    const S& shell = d[k - 1][n];
    Bounded<S> r = series.outer(n);
    S contrib = r.value * shell;
    sum = have_sum ? sum + contrib : contrib;
    have_sum = true;
    inner_error += magnitude(shell) * r.abs_error;
    maj_partial += dm[k - 1][n];

    HPReal rest = series.majorant_total - maj_partial;
    double tail = series.outer_sup * (std::max(rest.to_double(), 0.0) +
                                      series.majorant_total.to_double() * rounding * (n + 1));
    if (n >= 2 && tail <= ctx.tail_epsilon * magnitude(sum))
      return {sum, tail + inner_error, n + 1};
    if (n >= ctx.max_terms)
      throw QError(ErrorCode::TailNotConverged, "multi-index series did not reach the tail target");
  }
}

}  // namespace qcalc
