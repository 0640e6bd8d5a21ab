#include "doctest.h"

#include <random>
#include <vector>

#include "qcalc/qfunc.hpp"

using namespace qcalc;

namespace {

Rational R(long p, long d = 1) { return Rational(p, d); }

Rational draw(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 13);
  return Rational(num(rng), den(rng));
}

void check_code(ErrorCode expected, auto&& fn) {
  try {
    fn();
    FAIL("no exception");
  } catch (const QError& e) {
    CHECK(e.code() == expected);
  }
}

}  // namespace

TEST_SUITE("qfunc") {

TEST_CASE("homogeneity and swap symmetry") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Rational a = draw(rng), b = draw(rng), x = draw(rng), y = draw(rng), lam = draw(rng);
    Rational q = std::vector<Rational>{R(1, 3), R(-5, 7), R(9, 4), R(-11, 6)}[trial % 4];
    int n = trial % 9;
    PhiSpec<Rational> s{n, a, b};
    CHECK(phi_eval(s, lam * x, lam * y, q) == lam.pow(n) * phi_eval(s, x, y, q));
    CHECK(phi_eval(s, x, y, q) == phi_eval(PhiSpec<Rational>{n, b, a}, y, x, q));
    if (!y.is_zero()) CHECK(phi_eval(s, x, y, q) == y.pow(n) * phi_eval(s, x / y, Rational(1), q));
  }
}

TEST_CASE("named specializations") {
  Rational q = R(3, 7), x = R(2, 5), y = R(-1, 3), b = R(5, 6);
  for (int n = 0; n <= 20; ++n) {
    CHECK(ultraspherical(n, b, x, y, q) == phi_eval(PhiSpec<Rational>{n, b, b}, x, y, q));
    CHECK(hahn(n, b, x, y, q) == phi_eval(PhiSpec<Rational>{n, b, R(0)}, x, y, q));
  }
  // h_n(x,y) = sum_k [n k] x^k y^(n-k)
  for (int n = 0; n <= 10; ++n) {
    Rational s(0);
    for (int k = 0; k <= n; ++k) s += qbinomial(n, k, q) * x.pow(k) * y.pow(n - k);
    CHECK(rogers_szego(n, x, y, q) == s);
  }
  check_code(ErrorCode::IndexOutOfRange, [&] { phi_eval(PhiSpec<Rational>{-1, b, b}, x, y, q); });
}

TEST_CASE("series form matches point evaluation") {
  auto vars = make_varset({"x", "y"});
  Rational q = R(-2, 9), a = R(1, 4), b = R(7, 3);
  for (int n = 0; n <= 8; ++n) {
    auto s = phi_series(PhiSpec<Rational>{n, a, b}, "x", "y", q, vars, 10);
    std::vector<Rational> pt{R(3, 5), R(-4, 7)};
    CHECK(s.evaluate(pt) == phi_eval(PhiSpec<Rational>{n, a, b}, pt[0], pt[1], q));
  }
  check_code(ErrorCode::OrderTooSmall, [&] { phi_series(PhiSpec<Rational>{5, a, b}, "x", "y", q, vars, 4); });
}

TEST_CASE("majorant dominates") {
  const unsigned bits = 200;
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Rational a = draw(rng), b = draw(rng), x = draw(rng), y = draw(rng);
    Rational q = R(trial % 2 ? -2 : 3, 7);
    int n = trial % 7;
    HPReal exact(phi_eval(PhiSpec<Rational>{n, a, b}, x, y, q), bits);
    HPReal maj = phi_majorant(n, HPReal(a, bits), HPReal(b, bits), HPReal(x, bits), HPReal(y, bits), HPReal(q, bits));
    CHECK(exact.abs() <= maj);
  }
}

TEST_CASE("basic hypergeometric edge cases") {
  auto ctx = EvalContext::make(R(1, 3));
  HyperSpec<HPComplex> zero_arg{{ctx.lift(R(1, 2))}, {ctx.lift(R(1, 5))}, ctx.lift(R(0))};
  CHECK(rphis_eval(zero_arg, ctx.q, ctx).value == HPComplex(1L, ctx.bits()));
  HyperSpec<HPComplex> q0{{QPow{0}, ctx.lift(R(1, 2))}, {ctx.lift(R(1, 5))}, ctx.lift(R(9))};
  CHECK(rphis_eval(q0, ctx.q, ctx).value == HPComplex(1L, ctx.bits()));

  HyperSpec<HPComplex> two_phi_zero{{ctx.lift(R(1, 2)), ctx.lift(R(1, 5))}, {}, ctx.lift(R(1, 9))};
  check_code(ErrorCode::Divergent, [&] { rphis_eval(two_phi_zero, ctx.q, ctx); });
  HyperSpec<HPComplex> outside{{ctx.lift(R(1, 2))}, {}, ctx.lift(R(3, 2))};
  check_code(ErrorCode::Divergent, [&] { rphis_eval(outside, ctx.q, ctx); });
  HyperSpec<HPComplex> lower_hit{{QPow{4}}, {QPow{2}}, ctx.lift(R(1, 2))};
  check_code(ErrorCode::ZeroDenominator, [&] { rphis_eval(lower_hit, ctx.q, ctx); });

  // r <= s converges for every argument
  HyperSpec<HPComplex> zero_phi_one{{}, {ctx.lift(R(1, 4))}, ctx.lift(R(40))};
  CHECK(rphis_eval(zero_phi_one, ctx.q, ctx).value.is_finite());
}

TEST_CASE("terminating series are exact and ignore canceling pairs") {
  Rational q = R(2, 5);
  auto ctx = EvalContext::make(q);
  HyperSpec<Rational> base{{QPow{4}, R(1, 3)}, {R(-1, 2)}, R(7, 3)};
  Rational v = rphis_eval(base, q, ctx).value;
  HyperSpec<Rational> padded = base;
  padded.upper.push_back(R(5, 9));
  padded.lower.push_back(R(5, 9));
  CHECK(rphis_eval(padded, q, ctx).value == v);

  // q-Chu-Vandermonde: 2phi1(q^-n, b; c; q, q) = (c/b;q)_n b^n / (c;q)_n
  Rational b = R(1, 3), c = R(-1, 2);
  for (int n = 0; n <= 6; ++n) {
    HyperSpec<Rational> cv{{QPow{n}, b}, {c}, q};
    Rational closed = qpoch_finite(c / b, q, n) * b.pow(n) / qpoch_finite(c, q, n);
    CHECK(rphis_eval(cv, q, ctx).value == closed);
  }
  HyperSpec<Rational> nonterm{{R(1, 3)}, {}, R(1, 2)};
  check_code(ErrorCode::PreconditionViolated, [&] { rphis_eval(nonterm, q, ctx); });
}

TEST_CASE("q-binomial theorem at higher precision") {
  auto ctx = EvalContext::make(R(-3, 5), 80);
  for (auto [a, z] : {std::pair{R(2, 3), R(1, 2)}, std::pair{R(-5, 4), R(-3, 4)}}) {
    auto s = rphis_eval(HyperSpec<HPComplex>{{ctx.lift(a)}, {}, ctx.lift(z)}, ctx.q, ctx);
    auto p = qpoch_infinite(a * z, ctx) / qpoch_infinite(z, ctx);
    double diff = (s.value - p.value).magnitude() / p.value.magnitude();
    CHECK(diff <= s.rel_error() + p.rel_error() + 1e-70);
  }
}

TEST_CASE("complex arguments") {
  auto ctx = EvalContext::make(HPComplex(R(1, 5), R(1, 4), bits_for_digits(50)), 50);
  HPComplex a = ctx.lift(R(1, 3), R(-1, 2)), z = ctx.lift(R(1, 4), R(1, 6));
  auto s = rphis_eval(HyperSpec<HPComplex>{{a}, {}, z}, ctx.q, ctx);
  auto p = qpoch_infinite(a * z, ctx.q, ctx) / qpoch_infinite(z, ctx.q, ctx);
  CHECK((s.value - p.value).magnitude() / p.value.magnitude() <= 1e-40);
}

TEST_CASE("shell summation reproduces a product of geometric series") {
  // sum_{n1,n2} 2^-(n1+n2) x^n1 y^n2 = 1/((1-x/2)(1-y/2))
  auto ctx = EvalContext::make(R(1, 2));
  const unsigned bits = ctx.bits();
  HPReal x(R(1, 3), bits), y(R(-2, 5), bits);
  ShellSeries<HPComplex> ss;
  ss.outer = [&](int n) { return exact(HPComplex(HPReal(1L, bits) / HPReal(2L, bits).pow(n))); };
  ss.outer_sup = 1.0;
  ss.factors = {[&](int n) { return HPComplex(x.pow(n)); }, [&](int n) { return HPComplex(y.pow(n)); }};
  ss.majorants = {[&](int n) { return x.abs().pow(n); }, [&](int n) { return y.abs().pow(n); }};
  ss.majorant_total = HPReal(1L, bits) / (1L - x.abs()) / (1L - y.abs());
  auto r = shell_sum(ss, ctx);
  HPReal closed = HPReal(1L, bits) / ((1L - x / 2L) * (1L - y / 2L));
  CHECK((r.value.real() - closed).abs().to_double() <= r.abs_error + 1e-50);
  CHECK(r.rel_error() <= 1e-40);
}

}  // TEST_SUITE
