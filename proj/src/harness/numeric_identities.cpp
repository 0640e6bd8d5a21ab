#include <cmath>

#include "builders.hpp"
#include "qcalc/error.hpp"
#include "qcalc/qcore.hpp"
#include "qcalc/qfunc.hpp"
#include "qcalc/qint.hpp"

namespace qcalc::harness {

namespace {

using C = HPComplex;
using BC = Bounded<HPComplex>;

C one(const EvalContext& ctx) { return C(1L, ctx.bits()); }

BC products(const std::vector<C>& num, const std::vector<C>& den, const EvalContext& ctx) {
  BC r = exact(one(ctx));
  for (const auto& a : num) r = r * qpoch_infinite(a, ctx);
  for (const auto& a : den) r = r * qpoch_infinite_recip(a, ctx.q, ctx, a.str(10));
  return r;
}

// 1/(q;q)_n for n = 0.. on demand
class InvQq {
 public:
  explicit InvQq(const EvalContext& ctx) : q_(ctx.q), vals_{one(ctx)} {}
  const C& operator()(int n) {
    while (static_cast<int>(vals_.size()) <= n) {
      int k = static_cast<int>(vals_.size());
      vals_.push_back(vals_.back() / (one_like(q_) - q_.pow(k)));
    }
    return vals_[n];
  }

 private:
  C q_;
  std::vector<C> vals_;
};

// Adds the factor n -> Phi_{n+m}^{(alpha,beta)}(X, Y) / (q;q)_n with majorant
// Phi^maj_{n+m}(|X|,|Y|) / (p;p)_{n+m} (1/(p;p)_n <= 1/(p;p)_{n+m}); returns the
// majorant total (-|alpha X|, -|beta Y|; p)_oo / (|X|, |Y|; p)_oo minus its first m terms.
HPReal add_phi_factor(ShellSeries<C>& ss, const C& alpha, const C& beta, const C& X, const C& Y, int m,
                      const EvalContext& ctx) {
  auto inv = std::make_shared<InvQq>(ctx);
  C q = ctx.q;
  ss.factors.push_back([=](int n) { return phi_eval(PhiSpec<C>{n + m, alpha, beta}, X, Y, q) * (*inv)(n); });
  const HPReal am = alpha.abs(), bm = beta.abs(), xm = X.abs(), ym = Y.abs(), p = q.abs();
  ss.majorants.push_back([=](int n) { return phi_majorant(n + m, am, bm, xm, ym, p) / qpoch_finite(p, p, n + m); });
  HPReal total = majorant_product({am * xm, bm * ym}, {xm, ym}, p, ctx);
  // the shifted factor skips the first m majorant terms
  for (int i = 0; i < m; ++i) total -= phi_majorant(i, am, bm, xm, ym, p) / qpoch_finite(p, p, i);
  return total;
}

BC constant_outer(const EvalContext& ctx) { return exact(one(ctx)); }

NumericSides finish(BC lhs, BC rhs) {
  NumericSides out{lhs, rhs, {}, {}, {}};
  out.tail_bounds["lhs"] = lhs.abs_error;
  out.tail_bounds["rhs"] = rhs.abs_error;
  out.truncation["lhs"] = lhs.terms;
  out.truncation["rhs"] = rhs.terms;
  return out;
}

void require_below_one(const C& v, const std::string& what) {
  if (!(v.abs() < HPReal(1L, v.bits())))
    throw QError(ErrorCode::PreconditionViolated, what + " must have modulus below 1");
}

}  // namespace

// ---------------------------------------------------------------------------
// Generating functions

NumericSides numeric_genfun_basic(const IdentityCase& c, const EvalContext& ctx) {
  const Binding& b = c.binding;
  C a = hp_param(b, "a", ctx), bb = hp_param(b, "b", ctx), x = hp_param(b, "x", ctx), y = hp_param(b, "y", ctx),
    t = hp_param(b, "t", ctx);
  C X = x * t, Y = y * t;
  require_below_one(X, "xt");
  require_below_one(Y, "yt");
  ShellSeries<C> ss;
  ss.outer = [&](int) { return constant_outer(ctx); };
  ss.majorant_total = add_phi_factor(ss, a, bb, X, Y, 0, ctx);
  BC lhs = shell_sum(ss, ctx);
  BC rhs = products({a * X, bb * Y}, {X, Y}, ctx);
  return finish(lhs, rhs);
}

NumericSides numeric_genfun_shifted(const IdentityCase& c, const EvalContext& ctx) {
  const Binding& b = c.binding;
  C a = hp_param(b, "a", ctx), bb = hp_param(b, "b", ctx), x = hp_param(b, "x", ctx), y = hp_param(b, "y", ctx),
    t = hp_param(b, "t", ctx);
  const int m = int_param(b, "m");
  C X = x * t, Y = y * t;
  require_below_one(X, "xt");
  require_below_one(Y, "yt");
  ShellSeries<C> ss;
  ss.outer = [&](int) { return constant_outer(ctx); };
  ss.majorant_total = add_phi_factor(ss, a, bb, X, Y, m, ctx);
  BC lhs = shell_sum(ss, ctx);
  HyperSpec<C> spec{{QPow{m}, X, Y}, {a * X, bb * Y}, ctx.q};
  BC rhs = products({a * X, bb * Y}, {X, Y}, ctx) * rphis_eval(spec, ctx.q, ctx);
  return finish(lhs, rhs);
}

NumericSides numeric_genfun_saalschutz(const IdentityCase& c, const EvalContext& ctx) {
  const Binding& b = c.binding;
  C a = hp_param(b, "a", ctx), bb = hp_param(b, "b", ctx), cc = hp_param(b, "c", ctx), d = hp_param(b, "d", ctx),
    x = hp_param(b, "x", ctx), y = hp_param(b, "y", ctx), t = hp_param(b, "t", ctx);
  C X = x * t, Y = y * t, ab = a * bb;
  require_below_one(X, "xt");
  require_below_one(Y, "yt");
  require_below_one(cc, "c");
  require_below_one(ab, "ab");
  // outer (c;q)_n / (ab;q)_n, bounded by (-|c|;p)_oo / (|ab|;p)_oo
  std::vector<C> ratios{one(ctx)};
  C q = ctx.q;
  const double threshold = ctx.zero_threshold();
  ShellSeries<C> ss;
  ss.outer = [&](int n) {
    while (static_cast<int>(ratios.size()) <= n) {
      C qk = q.pow(static_cast<long>(ratios.size()) - 1);
      C den = one(ctx) - ab * qk;
      if (den.magnitude() < threshold) throw QError(ErrorCode::ZeroDenominator, "(ab;q)_n vanishes");
      ratios.push_back(ratios.back() * (one(ctx) - cc * qk) / den);
    }
    return exact(ratios[n]);
  };
  ss.outer_sup = majorant_product({cc.abs()}, {ab.abs()}, q.abs(), ctx).to_double() * (1 + 1e-12);
  ss.majorant_total = add_phi_factor(ss, a, bb, X, Y, 0, ctx);
  BC lhs = shell_sum(ss, ctx);
  HyperSpec<C> spec{{d, X, Y}, {a * X, bb * Y}, cc};
  BC rhs = products({cc, a * X, bb * Y}, {ab, X, Y}, ctx) * rphis_eval(spec, q, ctx);
  return finish(lhs, rhs);
}

// ---------------------------------------------------------------------------
// q-Lauricella transformations

namespace {

// outer (a;q)_N / (c;q)_N with sup bound (-|a|;p)_oo / (|c|;p)_oo
void lauricella_outer(ShellSeries<C>& ss, const C& a, const C& c, const EvalContext& ctx,
                      std::shared_ptr<std::vector<C>> cache) {
  C q = ctx.q;
  const double threshold = ctx.zero_threshold();
  const unsigned bits = ctx.bits();
  cache->assign(1, C(1L, bits));
  ss.outer = [=](int n) {
    while (static_cast<int>(cache->size()) <= n) {
      C qk = q.pow(static_cast<long>(cache->size()) - 1);
      C one_c(1L, bits);
      C den = one_c - c * qk;
      if (den.magnitude() < threshold) throw QError(ErrorCode::ZeroDenominator, "(c;q)_N vanishes");
      cache->push_back(cache->back() * (one_c - a * qk) / den);
    }
    return exact((*cache)[n]);
  };
  ss.outer_sup = majorant_product({a.abs()}, {c.abs()}, q.abs(), ctx).to_double() * (1 + 1e-12);
}

}  // namespace

NumericSides numeric_andrews_lauricella(const IdentityCase& c, const EvalContext& ctx) {
  const Binding& b = c.binding;
  const int k = int_param(b, "k");
  C a = hp_param(b, "a", ctx), cc = hp_param(b, "c", ctx);
  C q = ctx.q;
  const unsigned bits = ctx.bits();
  ShellSeries<C> ss;
  lauricella_outer(ss, a, cc, ctx, std::make_shared<std::vector<C>>());
  HPReal total(1L, bits);
  std::vector<C> num{a}, den{cc}, upper{cc / a}, lower;
  for (int j = 1; j <= k; ++j) {
    C beta = hp_param(b, indexed("beta", j), ctx), y = hp_param(b, indexed("y", j), ctx);
    require_below_one(y, indexed("y", j));
    auto inv = std::make_shared<InvQq>(ctx);
    ss.factors.push_back([=](int n) { return qpoch_finite(beta, q, n) * y.pow(n) * (*inv)(n); });
    const HPReal bm = beta.abs(), ym = y.abs(), p = q.abs();
    ss.majorants.push_back([=](int n) { return qpoch_finite(-bm, p, n) * ym.pow(n) / qpoch_finite(p, p, n); });
    total *= majorant_product({bm * ym}, {ym}, p, ctx);
    num.push_back(beta * y);
    den.push_back(y);
    upper.push_back(y);
    lower.push_back(beta * y);
  }
  ss.majorant_total = total;
  BC lhs = shell_sum(ss, ctx);
  std::vector<HyperParam<C>> up(upper.begin(), upper.end()), lo(lower.begin(), lower.end());
  BC rhs = products(num, den, ctx) * rphis_eval(HyperSpec<C>{up, lo, a}, q, ctx);
  return finish(lhs, rhs);
}

NumericSides numeric_liu_lauricella(const IdentityCase& c, const EvalContext& ctx) {
  const Binding& b = c.binding;
  const int k = int_param(b, "k");
  C a = hp_param(b, "a", ctx), cc = hp_param(b, "c", ctx);
  C q = ctx.q;
  ShellSeries<C> ss;
  lauricella_outer(ss, a, cc, ctx, std::make_shared<std::vector<C>>());
  HPReal total(1L, ctx.bits());
  std::vector<C> num{a}, den{cc}, upper{cc / a}, lower;
  for (int j = 1; j <= k; ++j) {
    C alpha = hp_param(b, indexed("alpha", j), ctx), beta = hp_param(b, indexed("beta", j), ctx);
    C x = hp_param(b, indexed("x", j), ctx), y = hp_param(b, indexed("y", j), ctx);
    require_below_one(x, indexed("x", j));
    require_below_one(y, indexed("y", j));
    total *= add_phi_factor(ss, alpha, beta, x, y, 0, ctx);
    num.insert(num.end(), {alpha * x, beta * y});
    den.insert(den.end(), {x, y});
    upper.insert(upper.end(), {x, y});
    lower.insert(lower.end(), {alpha * x, beta * y});
  }
  ss.majorant_total = total;
  BC lhs = shell_sum(ss, ctx);
  std::vector<HyperParam<C>> up(upper.begin(), upper.end()), lo(lower.begin(), lower.end());
  BC rhs = products(num, den, ctx) * rphis_eval(HyperSpec<C>{up, lo, a}, q, ctx);
  return finish(lhs, rhs);
}

// ---------------------------------------------------------------------------
// q-integrals

namespace {

NumericSides integral_sides(BC lhs, BC rhs, const JacksonSamples<C>* samples = nullptr) {
  NumericSides out = finish(lhs, rhs);
  if (samples) out.notes.push_back("decay ratio " + std::to_string(samples->ratio));
  return out;
}

}  // namespace

NumericSides numeric_alsalam_verma(const IdentityCase& c, const EvalContext& ctx) {
  const Binding& b = c.binding;
  C x = hp_param(b, "x", ctx), y = hp_param(b, "y", ctx), a = hp_param(b, "a", ctx), bb = hp_param(b, "b", ctx),
    cc = hp_param(b, "c", ctx);
  C q = ctx.q;
  ProductIntegrand f{{q / x, q / y, a * bb * cc}, {a / y, bb / x, cc}, 0};
  BC lhs = jackson_integral(f.integral(x, y, ctx));
  BC rhs = rhs_alsalam_verma(x, y, a, bb, cc, ctx);
  return integral_sides(lhs, rhs);
}

NumericSides numeric_phi_qint_rep(const IdentityCase& c, const EvalContext& ctx) {
  const Binding& b = c.binding;
  const int k = int_param(b, "k");
  C a = hp_param(b, "a", ctx), bb = hp_param(b, "b", ctx), x = hp_param(b, "x", ctx), y = hp_param(b, "y", ctx);
  BC lhs = exact(phi_eval(PhiSpec<C>{k, a, bb}, x, y, ctx.q));
  BC rhs = phi_qint_representation(k, a, bb, x, y, ctx);
  return integral_sides(lhs, rhs);
}

NumericSides numeric_rs_qint_rep(const IdentityCase& c, const EvalContext& ctx) {
  const Binding& b = c.binding;
  const int k = int_param(b, "k");
  C x = hp_param(b, "x", ctx), y = hp_param(b, "y", ctx);
  BC lhs = exact(rogers_szego(k, x, y, ctx.q));
  BC rhs = rs_qint_representation(k, x, y, ctx);
  return integral_sides(lhs, rhs);
}

namespace {

// sum_n prod_j Phi_{n_j}(u_j, v_j)/(q;q)_{n_j} * int_x^y z^{|n|} G(z) d_q z, where
// G is `base`. Moments J(N) are taken from one set of grid samples; with
// Z >= |z| on the grid, J(N)/Z^N is bounded by sum |weights| and the factors
// become Phi_n(Z u_j, Z v_j)/(q;q)_n.
BC multilinear_lhs(const ProductIntegrand& base, const C& x, const C& y, const std::vector<C>& alpha,
                   const std::vector<C>& beta, const std::vector<C>& u, const std::vector<C>& v,
                   const EvalContext& ctx, NumericSides& notes) {
  const unsigned bits = ctx.bits();
  JacksonSamples<C> s = jackson_samples(base.integral(x, y, ctx));
  const C Z(std::max(x.abs(), y.abs()));
  double weight_sum = 0.0;
  for (int n = 0; n < s.terms; ++n) weight_sum += s.upper_weighted[n].magnitude() + s.lower_weighted[n].magnitude();
  const double moment_error = s.tail + s.sampling_error;
  auto powers = std::make_shared<std::vector<C>>(1, C(1L, bits));
  ShellSeries<C> ss;
  ss.outer = [&s, powers, Z, moment_error](int N) {
    while (static_cast<int>(powers->size()) <= N) powers->push_back(powers->back() / Z);
    return BC{jackson_moment(s, N) * (*powers)[N], moment_error, s.terms};
  };
  ss.outer_sup = (weight_sum + moment_error) * (1 + 1e-12);
  HPReal total(1L, bits);
  for (size_t j = 0; j < u.size(); ++j) {
    C U = u[j] * Z, V = v[j] * Z;
    require_below_one(U, "u_j max(|x|,|y|)");
    require_below_one(V, "v_j max(|x|,|y|)");
    total *= add_phi_factor(ss, alpha[j], beta[j], U, V, 0, ctx);
  }
  ss.majorant_total = total;
  BC out = shell_sum(ss, ctx);
  notes.tail_bounds["moment"] = moment_error;
  notes.truncation["grid"] = s.terms;
  notes.notes.push_back("grid decay ratio " + std::to_string(s.ratio));
  return out;
}

struct PairParams {
  std::vector<C> alpha, beta, u, v;
};

PairParams pair_params(const Binding& b, int k, const EvalContext& ctx) {
  PairParams p;
  for (int j = 1; j <= k; ++j) {
    p.alpha.push_back(hp_param(b, indexed("alpha", j), ctx));
    p.beta.push_back(hp_param(b, indexed("beta", j), ctx));
    p.u.push_back(hp_param(b, indexed("u", j), ctx));
    p.v.push_back(hp_param(b, indexed("v", j), ctx));
  }
  return p;
}

}  // namespace

NumericSides numeric_multilinear_qint(const IdentityCase& c, const EvalContext& ctx) {
  const Binding& b = c.binding;
  const int k = int_param(b, "k");
  C x = hp_param(b, "x", ctx), y = hp_param(b, "y", ctx), a = hp_param(b, "a", ctx), bb = hp_param(b, "b", ctx),
    gamma = hp_param(b, "gamma", ctx), t = hp_param(b, "t", ctx);
  C q = ctx.q;
  PairParams pp = pair_params(b, k, ctx);
  ProductIntegrand base{{q / x, q / y, gamma * t}, {bb / x, a / y, t}, 0};
  NumericSides extra;
  BC lhs = multilinear_lhs(base, x, y, pp.alpha, pp.beta, pp.u, pp.v, ctx, extra);
  ProductIntegrand full = base;
  for (int j = 0; j < k; ++j) {
    full.numer.push_back(pp.alpha[j] * pp.u[j]);
    full.numer.push_back(pp.beta[j] * pp.v[j]);
    full.denom.push_back(pp.u[j]);
    full.denom.push_back(pp.v[j]);
  }
  BC rhs = jackson_integral(full.integral(x, y, ctx));
  NumericSides out = finish(lhs, rhs);
  out.tail_bounds.insert(extra.tail_bounds.begin(), extra.tail_bounds.end());
  out.truncation.insert(extra.truncation.begin(), extra.truncation.end());
  out.notes = extra.notes;
  return out;
}

NumericSides numeric_multilinear_qint_m(const IdentityCase& c, const EvalContext& ctx) {
  const Binding& b = c.binding;
  const int k = int_param(b, "k"), m = int_param(b, "m");
  C x = hp_param(b, "x", ctx), y = hp_param(b, "y", ctx);
  C q = ctx.q;
  PairParams pp = pair_params(b, k, ctx);
  ProductIntegrand base{{q / x, q / y}, {}, m};
  NumericSides extra;
  BC lhs = multilinear_lhs(base, x, y, pp.alpha, pp.beta, pp.u, pp.v, ctx, extra);
  ProductIntegrand full = base;
  for (int j = 0; j < k; ++j) {
    full.numer.push_back(pp.alpha[j] * pp.u[j]);
    full.numer.push_back(pp.beta[j] * pp.v[j]);
    full.denom.push_back(pp.u[j]);
    full.denom.push_back(pp.v[j]);
  }
  BC rhs = jackson_integral(full.integral(x, y, ctx));
  NumericSides out = finish(lhs, rhs);
  out.tail_bounds.insert(extra.tail_bounds.begin(), extra.tail_bounds.end());
  out.truncation.insert(extra.truncation.begin(), extra.truncation.end());
  out.notes = extra.notes;
  return out;
}

NumericSides numeric_andrews_askey(const IdentityCase& c, const EvalContext& ctx) {
  const Binding& b = c.binding;
  C u = hp_param(b, "u", ctx), v = hp_param(b, "v", ctx), cc = hp_param(b, "c", ctx), d = hp_param(b, "d", ctx);
  C q = ctx.q;
  ProductIntegrand f{{q / u, q / v}, {cc, d}, 0};
  return integral_sides(jackson_integral(f.integral(u, v, ctx)), rhs_andrews_askey(u, v, cc, d, ctx));
}

NumericSides numeric_wang_moment(const IdentityCase& c, const EvalContext& ctx) {
  const Binding& b = c.binding;
  const int n = int_param(b, "n");
  C u = hp_param(b, "u", ctx), v = hp_param(b, "v", ctx), cc = hp_param(b, "c", ctx), d = hp_param(b, "d", ctx);
  C q = ctx.q;
  ProductIntegrand f{{q / u, q / v}, {cc, d}, n};
  return integral_sides(jackson_integral(f.integral(u, v, ctx)), rhs_wang_moment(u, v, cc, d, n, ctx));
}

NumericSides numeric_liu_qint(const IdentityCase& c, const EvalContext& ctx) {
  const Binding& b = c.binding;
  C u = hp_param(b, "u", ctx), v = hp_param(b, "v", ctx), a = hp_param(b, "a", ctx), bb = hp_param(b, "b", ctx),
    cc = hp_param(b, "c", ctx), d = hp_param(b, "d", ctx), alpha = hp_param(b, "alpha", ctx),
    beta = hp_param(b, "beta", ctx);
  C q = ctx.q;
  ProductIntegrand f{{q / u, q / v, alpha * a, beta * bb}, {a, bb, cc, d}, 0};
  BC lhs = jackson_integral(f.integral(u, v, ctx));
  bool certified = false;
  BC rhs = rhs_liu_qint(u, v, a, bb, cc, d, alpha, beta, ctx, &certified);
  NumericSides out = finish(lhs, rhs);
  out.notes.push_back(certified ? "outer series: majorant tail" : "outer series: observed-ratio tail");
  return out;
}

}  // namespace qcalc::harness
