#include "qcalc/qint.hpp"

#include <cmath>

namespace qcalc {

namespace {

HPComplex one_c(const EvalContext& ctx) { return HPComplex(1L, ctx.bits()); }

// prod (num_i; q)_oo / prod (den_j; q)_oo with the zero guard on denominators.
Bounded<HPComplex> product_ratio(const std::vector<HPComplex>& num, const std::vector<HPComplex>& den,
                                 const EvalContext& ctx) {
  Bounded<HPComplex> r = exact(one_c(ctx));
  for (const auto& a : num) r = r * qpoch_infinite(a, ctx);
  for (const auto& a : den) r = r * qpoch_infinite_recip(a, ctx.q, ctx, a.str(12));
  return r;
}

void require_nonzero(const HPComplex& v, const char* what) {
  if (v.is_zero()) throw QError(ErrorCode::ZeroDenominator, std::string(what) + " must be nonzero");
}

void require_inside(const HPComplex& v, const char* what) {
  if (!(v.magnitude() < 1.0))
    throw QError(ErrorCode::PreconditionViolated, std::string(what) + " must have modulus below 1");
}

}  // namespace

HPComplex ProductIntegrand::operator()(const HPComplex& z, const EvalContext& ctx) const {
  HPComplex r = z.pow(power);
  for (const auto& a : numer) r = r * qpoch_infinite(a * z, ctx).value;
  for (const auto& a : denom) {
    Bounded<HPComplex> d = qpoch_infinite(a * z, ctx);
    if (d.value.is_zero()) throw QError(ErrorCode::IntegrandUndefined, "integrand denominator vanishes");
    r = r / d.value;
  }
  return r;
}

void ProductIntegrand::check_grid(const HPComplex& endpoint, const EvalContext& ctx) const {
  for (const auto& a : denom) require_nonvanishing(a * endpoint, ctx.q, ctx.zero_threshold(), "integrand");
}

double ProductIntegrand::rel_error(const EvalContext& ctx) const {
  return 1.01 * static_cast<double>(numer.size() + denom.size()) * ctx.tail_epsilon;
}

QIntegral<HPComplex> ProductIntegrand::integral(const HPComplex& lower, const HPComplex& upper,
                                                const EvalContext& ctx) const {
  QIntegral<HPComplex> qi;
  ProductIntegrand self = *this;
  qi.integrand = make_unary<HPComplex>([self, ctx](const HPComplex& z) { return self(z, ctx); });
  qi.lower = lower;
  qi.upper = upper;
  qi.ctx = ctx;
  qi.grid_check = [self, ctx](const HPComplex& e) { self.check_grid(e, ctx); };
  qi.integrand_rel_error = rel_error(ctx);
  return qi;
}

Bounded<HPComplex> rhs_alsalam_verma(const HPComplex& x, const HPComplex& y, const HPComplex& a,
                                     const HPComplex& b, const HPComplex& c, const EvalContext& ctx) {
  require_nonzero(x, "x");
  require_nonzero(y, "y");
  require_inside(a, "a");
  require_inside(b, "b");
  require_inside(c * x, "cx");
  require_inside(c * y, "cy");
  require_inside(a * x / y, "ax/y");
  require_inside(b * y / x, "by/x");
  const HPComplex& q = ctx.q;
  Bounded<HPComplex> r = product_ratio({q, x / y, q * y / x, a * b, a * c * x, b * c * y},
                                       {a * x / y, b * y / x, a, b, c * x, c * y}, ctx);
  return exact((one_c(ctx) - q) * y) * r;
}

Bounded<HPComplex> rhs_andrews_askey(const HPComplex& u, const HPComplex& v, const HPComplex& c,
                                     const HPComplex& d, const EvalContext& ctx) {
  require_nonzero(u, "u");
  require_nonzero(v, "v");
  const HPComplex& q = ctx.q;
  Bounded<HPComplex> r =
      product_ratio({q, u / v, q * v / u, c * d * u * v}, {c * u, c * v, d * u, d * v}, ctx);
  return exact((one_c(ctx) - q) * v) * r;
}

namespace {

// Running values (cv, dv; q)_j / (cduv; q)_j for j = 0..n.
struct InnerRatios {
  HPComplex cv, dv, cduv, q;
  double threshold;
  std::vector<HPComplex> r;
  HPComplex qj;

  InnerRatios(const HPComplex& u, const HPComplex& v, const HPComplex& c, const HPComplex& d,
              const EvalContext& ctx)
      : cv(c * v), dv(d * v), cduv(c * d * u * v), q(ctx.q), threshold(ctx.zero_threshold()),
        r{one_c(ctx)}, qj(one_c(ctx)) {}

  const HPComplex& at(int j) {
    while (static_cast<int>(r.size()) <= j) {
      HPComplex one = one_like(q);
      HPComplex den = one - cduv * qj;
      if (den.is_zero() || den.magnitude() < threshold)
        throw QError(ErrorCode::ZeroDenominator, "(cduv;q)_j vanishes");
      r.push_back(r.back() * (one - cv * qj) * (one - dv * qj) / den);
      qj = qj * q;
    }
    return r[j];
  }
};

HPComplex inner_sum(InnerRatios& ir, const HPComplex& u, const HPComplex& v, int n) {
  std::vector<HPComplex> row = qbinomial_row(n, ir.q);
  HPComplex s = zero_like(ir.q);
  for (int j = 0; j <= n; ++j) s = s + row[j] * ir.at(j) * u.pow(j) * v.pow(n - j);
  return s;
}

}  // namespace

Bounded<HPComplex> rhs_wang_moment(const HPComplex& u, const HPComplex& v, const HPComplex& c,
                                   const HPComplex& d, int n, const EvalContext& ctx) {
  if (n < 0) throw QError(ErrorCode::IndexOutOfRange, "moment index must be nonnegative");
  Bounded<HPComplex> aa = rhs_andrews_askey(u, v, c, d, ctx);
  InnerRatios ir(u, v, c, d, ctx);
  return aa * exact(inner_sum(ir, u, v, n));
}

Bounded<HPComplex> rhs_liu_qint(const HPComplex& u, const HPComplex& v, const HPComplex& a,
                                const HPComplex& b, const HPComplex& c, const HPComplex& d,
                                const HPComplex& alpha, const HPComplex& beta,
                                const EvalContext& ctx, bool* certified) {
  Bounded<HPComplex> aa = rhs_andrews_askey(u, v, c, d, ctx);
  const HPComplex& q = ctx.q;
  InnerRatios ir(u, v, c, d, ctx);
  // 1/(q;q)_n built incrementally
  std::vector<HPComplex> inv_qq{one_c(ctx)};
  auto inv_qqn = [&](int n) -> const HPComplex& {
    while (static_cast<int>(inv_qq.size()) <= n) {
      int k = static_cast<int>(inv_qq.size());
      inv_qq.push_back(inv_qq.back() / (one_c(ctx) - q.pow(k)));
    }
    return inv_qq[n];
  };
  auto term = [&](int n) {
    HPComplex phi = phi_eval(PhiSpec<HPComplex>{n, alpha, beta}, a, b, q);
    return phi * inner_sum(ir, u, v, n) * inv_qqn(n);
  };

  const unsigned bits = ctx.bits();
  const HPReal one_r(1L, bits);
  const HPReal p = q.abs(), W = u.abs() + v.abs(), cduv = (c * d * u * v).abs();
  const HPReal aW = a.abs() * W, bW = b.abs() * W, alm = alpha.abs(), bem = beta.abs();
  const bool majorant_ok = cduv < one_r && aW < one_r && bW < one_r;
  if (certified) *certified = majorant_ok;

  Bounded<HPComplex> series;
  if (majorant_ok) {
    // |S_n| <= K W^n with K = (-|cv|, -|dv|; p)_oo / ((|cduv|; p)_oo (p; p)_oo), since
    // [n j] <= 1/(p;p)_oo; and |Phi_n(a,b)| W^n <= Phi_n^(-|alpha|,-|beta|)(|a|W, |b|W; p).
    const HPReal K = majorant_product({(c * v).abs(), (d * v).abs()}, {cduv, p}, p, ctx);
    ShellSeries<HPComplex> ss;
    ss.outer = [&](int) { return exact(one_c(ctx)); };
    ss.outer_sup = 1.0;
    ss.factors = {[&](int n) { return term(n); }};
    ss.majorants = {[=](int n) { return K * phi_majorant(n, alm, bem, aW, bW, p) / qpoch_finite(p, p, n); }};
    ss.majorant_total = K * majorant_product({alm * aW, bem * bW}, {aW, bW}, p, ctx);
    series = shell_sum(ss, ctx);
  } else {
    series = ratio_tail_sum(term, ctx);
  }
  return aa * series;
}

Bounded<HPComplex> phi_qint_representation(int k, const HPComplex& a, const HPComplex& b,
                                           const HPComplex& x, const HPComplex& y,
                                           const EvalContext& ctx) {
  if (k < 0) throw QError(ErrorCode::IndexOutOfRange, "index must be nonnegative");
  require_nonzero(x, "x");
  require_nonzero(y, "y");
  const HPComplex& q = ctx.q;
  HPComplex ab = a * b;
  Bounded<HPComplex> pref =
      product_ratio({a, b, b * y / x, a * x / y}, {q, ab, x / y, q * y / x}, ctx);
  HPComplex lead = qpoch_finite(ab, q, k) / ((one_c(ctx) - q) * y);
  ProductIntegrand f{{q / x, q / y}, {b / x, a / y}, k};
  Bounded<HPComplex> integral = jackson_integral(f.integral(x, y, ctx));
  return exact(lead) * pref * integral;
}

Bounded<HPComplex> rs_qint_representation(int k, const HPComplex& x, const HPComplex& y,
                                          const EvalContext& ctx) {
  if (k < 0) throw QError(ErrorCode::IndexOutOfRange, "index must be nonnegative");
  require_nonzero(x, "x");
  require_nonzero(y, "y");
  const HPComplex& q = ctx.q;
  Bounded<HPComplex> pref = product_ratio({}, {q, x / y, q * y / x}, ctx);
  HPComplex lead = one_c(ctx) / ((one_c(ctx) - q) * y);
  ProductIntegrand f{{q / x, q / y}, {}, k};
  Bounded<HPComplex> integral = jackson_integral(f.integral(x, y, ctx));
  return exact(lead) * pref * integral;
}

}  // namespace qcalc
