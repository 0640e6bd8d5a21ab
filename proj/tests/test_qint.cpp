#include "doctest.h"

#include "qcalc/qint.hpp"

using namespace qcalc;

namespace {

Rational R(long p, long d = 1) { return Rational(p, d); }
using C = HPComplex;

double rel(const C& a, const C& b) { return (a - b).magnitude() / std::max(a.magnitude(), b.magnitude()); }

void check_code(ErrorCode expected, auto&& fn) {
  try {
    fn();
    FAIL("no exception");
  } catch (const QError& e) {
    CHECK(e.code() == expected);
  }
}

QIntegral<C> plain(std::function<C(const C&)> f, const C& a, const C& b, const EvalContext& ctx) {
  return {make_unary<C>(std::move(f)), a, b, ctx, {}, 0.0};
}

}  // namespace

TEST_SUITE("qint") {

TEST_CASE("constant integrand telescopes") {
  auto ctx = EvalContext::make(R(2, 5));
  auto r = jackson_integral(plain([&](const C&) { return C(1L, ctx.bits()); }, ctx.lift(R(0)), ctx.lift(R(1)), ctx));
  CHECK(rel(r.value, C(1L, ctx.bits())) <= 1e-40);
}

TEST_CASE("linearity and orientation") {
  auto ctx = EvalContext::make(R(1, 3));
  C a = ctx.lift(R(-1, 2)), b = ctx.lift(R(3, 4));
  C lam = ctx.lift(R(2, 7)), mu = ctx.lift(R(-5, 3));
  ProductIntegrand f{{ctx.q / b}, {ctx.lift(R(1, 5))}, 1};
  ProductIntegrand g{{ctx.q / a}, {ctx.lift(R(-1, 4))}, 2};
  auto If = jackson_integral(f.integral(a, b, ctx));
  auto Ig = jackson_integral(g.integral(a, b, ctx));
  QIntegral<C> combo{make_unary<C>([&](const C& z) { return lam * f(z, ctx) + mu * g(z, ctx); }), a, b, ctx, {},
                     f.rel_error(ctx) + g.rel_error(ctx)};
  auto Ic = jackson_integral(combo);
  C expected = lam * If.value + mu * Ig.value;
  double bound = Ic.abs_error + lam.magnitude() * If.abs_error + mu.magnitude() * Ig.abs_error;
  CHECK((Ic.value - expected).magnitude() <= bound + 1e-48);

  auto Ir = jackson_integral(f.integral(b, a, ctx));
  CHECK(Ir.value == -If.value);
}

TEST_CASE("refining the tail target stays within the reported bound") {
  auto coarse = EvalContext::make(R(3, 5), 50, 1e-25);
  auto fine = coarse.with_tail_epsilon(1e-27);
  ProductIntegrand f{{coarse.q / coarse.lift(R(1, 2)), coarse.q}, {coarse.lift(R(1, 3))}, 0};
  auto c = jackson_integral(f.integral(coarse.lift(R(1, 2)), coarse.lift(R(1)), coarse));
  auto r = jackson_integral(f.integral(coarse.lift(R(1, 2)), coarse.lift(R(1)), fine));
  CHECK((c.value - r.value).magnitude() < c.abs_error);
  CHECK(r.terms > c.terms);
}

TEST_CASE("grid guard") {
  auto ctx = EvalContext::make(R(1, 2));
  // 1 - 2 z vanishes at z = 1/2 = 1 * q
  ProductIntegrand f{{}, {ctx.lift(R(2))}, 0};
  check_code(ErrorCode::ZeroDenominator, [&] { jackson_integral(f.integral(ctx.lift(R(0)), ctx.lift(R(1)), ctx)); });
  QIntegral<C> bad = plain([&](const C& z) { return C(1L, ctx.bits()) / (z - z); }, ctx.lift(R(0)), ctx.lift(R(1)), ctx);
  check_code(ErrorCode::IntegrandUndefined, [&] { jackson_integral(bad); });
}

TEST_CASE("closed forms collapse to each other") {
  auto ctx = EvalContext::make(R(3, 10));
  C u = ctx.lift(R(1, 2)), v = ctx.lift(R(1)), c = ctx.lift(R(1, 4)), d = ctx.lift(R(1, 5));
  auto aa = rhs_andrews_askey(u, v, c, d, ctx);
  auto w0 = rhs_wang_moment(u, v, c, d, 0, ctx);
  CHECK(rel(aa.value, w0.value) <= 1e-45);
  C zero = ctx.lift(R(0));
  bool certified = false;
  auto lq = rhs_liu_qint(u, v, zero, zero, c, d, ctx.lift(R(1, 3)), ctx.lift(R(-1, 2)), ctx, &certified);
  CHECK(certified);
  CHECK(rel(aa.value, lq.value) <= 1e-40);
}

TEST_CASE("Al-Salam-Verma") {
  auto ctx = EvalContext::make(R(1, 3));
  C x = ctx.lift(R(1, 2)), y = ctx.lift(R(-2, 3)), a = ctx.lift(R(1, 4)), b = ctx.lift(R(1, 5));
  C zero = ctx.lift(R(0)), q = ctx.q;

  // c = 0 leaves (1-q) y (q, x/y, qy/x, ab;q)_oo / (ax/y, by/x, a, b;q)_oo
  auto with_c0 = rhs_alsalam_verma(x, y, a, b, zero, ctx);
  auto P = [&](const C& t) { return qpoch_infinite(t, q, ctx); };
  auto spec = exact((C(1L, ctx.bits()) - q) * y) * P(q) * P(x / y) * P(q * y / x) * P(a * b) /
              (P(a * x / y) * P(b * y / x) * P(a) * P(b));
  CHECK(rel(with_c0.value, spec.value) <= 1e-40);

  for (Rational cv : {R(0), R(3, 7)}) {
    C cc = ctx.lift(cv);
    ProductIntegrand f{{q / x, q / y, a * b * cc}, {a / y, b / x, cc}, 0};
    auto lhs = jackson_integral(f.integral(x, y, ctx));
    auto rhs = rhs_alsalam_verma(x, y, a, b, cc, ctx);
    CHECK(rel(lhs.value, rhs.value) <= 1e-25);
  }
  check_code(ErrorCode::PreconditionViolated, [&] { rhs_alsalam_verma(x, y, ctx.lift(R(3, 2)), b, zero, ctx); });
  check_code(ErrorCode::PreconditionViolated, [&] { rhs_alsalam_verma(x, y, a, b, ctx.lift(R(5, 2)), ctx); });
}

TEST_CASE("Phi integral representation") {
  auto ctx = EvalContext::make(R(2, 5));
  C x = ctx.lift(R(1, 3)), y = ctx.lift(R(-3, 4)), a = ctx.lift(R(1, 6)), b = ctx.lift(R(-2, 7));
  C zero = ctx.lift(R(0));
  auto k0 = phi_qint_representation(0, a, b, x, y, ctx);
  CHECK(rel(k0.value, C(1L, ctx.bits())) <= 1e-25);
  auto k3 = phi_qint_representation(3, a, b, x, y, ctx);
  CHECK(rel(k3.value, phi_eval(PhiSpec<C>{3, a, b}, x, y, ctx.q)) <= 1e-25);
  for (int k = 0; k <= 8; ++k) {
    auto deg = phi_qint_representation(k, zero, zero, x, y, ctx);
    auto rs = rs_qint_representation(k, x, y, ctx);
    CHECK(rel(deg.value, rs.value) <= 1e-25);
    CHECK(rel(rs.value, rogers_szego(k, x, y, ctx.q)) <= 1e-25);
  }
}

TEST_CASE("moments from one set of samples") {
  auto ctx = EvalContext::make(R(1, 4));
  C u = ctx.lift(R(1, 3)), v = ctx.lift(R(1)), c = ctx.lift(R(1, 2)), d = ctx.lift(R(-1, 5));
  ProductIntegrand base{{ctx.q / u, ctx.q / v}, {c, d}, 0};
  auto samples = jackson_samples(base.integral(u, v, ctx));
  for (int n = 0; n <= 5; ++n) {
    ProductIntegrand pn = base;
    pn.power = n;
    auto direct = jackson_integral(pn.integral(u, v, ctx));
    CHECK(rel(jackson_moment(samples, n), direct.value) <= 1e-40);
    CHECK(rel(direct.value, rhs_wang_moment(u, v, c, d, n, ctx).value) <= 1e-25);
  }
}

TEST_CASE("context q in each scalar type") {
  auto ctx = EvalContext::make(R(2, 9));
  CHECK(context_q<Rational>(ctx) == R(2, 9));
  CHECK(context_q<HPReal>(ctx) == ctx.q.real());
  auto cplx = EvalContext::make(HPComplex(R(1, 5), R(1, 7), bits_for_digits(50)));
  check_code(ErrorCode::InvalidContext, [&] { context_q<Rational>(cplx); });
}

}  // TEST_SUITE
