#include "doctest.h"

#include <array>

#include "qcalc/fps.hpp"
#include "qcalc/qop.hpp"

using namespace qcalc;

namespace {

Rational R(long p, long d = 1) { return Rational(p, d); }

void check_code(ErrorCode expected, auto&& fn) {
  try {
    fn();
    FAIL("no exception");
  } catch (const QError& e) {
    CHECK(e.code() == expected);
  }
}

}  // namespace

TEST_SUITE("qop") {

TEST_CASE("monomials and constants") {
  Rational q = R(3, 8);
  CHECK(dq(make_unary<Rational>([](const Rational&) { return R(7); }), R(2), q) == R(0));
  for (int k = 1; k <= 6; ++k) {
    auto f = make_unary<Rational>([k](const Rational& x) { return x.pow(k); });
    for (Rational x : {R(1, 2), R(-5, 3)}) {
      CHECK(dq(f, x, q) == (1 - q.pow(k)) * x.pow(k - 1));
      CHECK(dq_iter(f, x, q, 1) == dq(f, x, q));
    }
    CHECK(dq_iter(f, R(4), q, 0) == f(R(4)));
  }
  // D_q^3 x^5 = (1-q^5)(1-q^4)(1-q^3) x^2
  auto f = make_unary<Rational>([](const Rational& x) { return x.pow(5); });
  Rational expected = (1 - q.pow(5)) * (1 - q.pow(4)) * (1 - q.pow(3)) * R(2).pow(2);
  CHECK(dq_iter(f, R(2), q, 3) == expected);
}

TEST_CASE("errors") {
  auto f = make_unary<Rational>([](const Rational& x) { return x; });
  check_code(ErrorCode::ZeroPoint, [&] { dq(f, R(0), R(1, 2)); });
  check_code(ErrorCode::ZeroPoint, [&] { dq_iter(f, R(0), R(1, 2), 2); });
  check_code(ErrorCode::IndexOutOfRange, [&] { dq_iter(f, R(1), R(1, 2), -1); });
  SampledFunction<Rational> g{2, [](std::span<const Rational> p) { return p[0] + p[1]; }, {}};
  std::array<Rational, 2> pt{R(0), R(1)};
  check_code(ErrorCode::ZeroPoint, [&] { qpartial(g, 0, std::span<const Rational>(pt), R(1, 2)); });
  check_code(ErrorCode::IndexOutOfRange, [&] { qpartial(g, 2, std::span<const Rational>(pt), R(1, 2)); });
  check_code(ErrorCode::IndexOutOfRange, [&] { eta(g, -1, std::span<const Rational>(pt), R(1, 2)); });
  std::array<Rational, 1> short_pt{R(1)};
  check_code(ErrorCode::IndexOutOfRange, [&] { g(std::span<const Rational>(short_pt)); });
}

TEST_CASE("partial derivatives in each coordinate mirror the one-variable operator") {
  Rational q = R(-2, 7);
  SampledFunction<Rational> f{2, [](std::span<const Rational> p) { return p[0] * p[0] * p[1] + p[1].pow(3); }, {}};
  std::array<Rational, 2> pt{R(3, 4), R(-5, 2)};
  auto in_x = make_unary<Rational>([&](const Rational& x) { return x * x * pt[1] + pt[1].pow(3); });
  auto in_y = make_unary<Rational>([&](const Rational& y) { return pt[0] * pt[0] * y + y.pow(3); });
  CHECK(qpartial(f, 0, std::span<const Rational>(pt), q) == dq(in_x, pt[0], q));
  CHECK(qpartial(f, 1, std::span<const Rational>(pt), q) == dq(in_y, pt[1], q));
  CHECK(eta(f, 0, std::span<const Rational>(pt), q) == in_x(q * pt[0]));
}

TEST_CASE("commutation of partial and shift in different coordinates") {
  Rational q = R(5, 9);
  SampledFunction<Rational> f{
      3, [](std::span<const Rational> p) { return p[0].pow(3) * p[1] - p[1] * p[1] * p[2] + p[0] * p[2]; }, {}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      std::array<Rational, 3> pt{R(1, 2), R(-2, 3), R(7, 5)};
      auto a = qpartial_function(eta_function(f, j, q), i, q);
      auto b = eta_function(qpartial_function(f, i, q), j, q);
      CHECK(a(std::span<const Rational>(pt)) == b(std::span<const Rational>(pt)));
    }
}

TEST_CASE("q close to 1 approaches the classical derivative") {
  // D_q carries no 1/(1-q) normalization, so D_q f / (1-q) is the quotient
  // that tends to f'(x); the gap is O(1-q)
  unsigned bits = bits_for_digits(50);
  HPReal eps(R(1, 1000000), bits);
  HPReal q = HPReal(1L, bits) - eps;
  auto f = make_unary<HPReal>([](const HPReal& x) { return x.pow(3) - 2L * x * x + x * 5L; });
  HPReal x(R(3, 2), bits);
  HPReal classical = 3L * x * x - 4L * x + 5L;
  HPReal diff = (dq(f, x, q) / eps - classical).abs();
  CHECK(diff.to_double() <= 10.0 * eps.to_double());
  CHECK(diff.to_double() > 0.0);
  CHECK((dq(f, x, q) - eps * classical).abs().to_double() <= 10.0 * eps.to_double() * eps.to_double());
}

TEST_CASE("agreement with the series operator") {
  Rational q = R(2, 3);
  auto vars = make_varset({"x", "y"});
  TruncatedSeries s(vars, 6);
  s.add_term({2, 1}, R(3));
  s.add_term({0, 4}, R(-1, 2));
  s.add_term({5, 0}, R(7));
  s.add_term({1, 1}, R(1, 9));
  SampledFunction<Rational> f{2, [&](std::span<const Rational> p) { return s.evaluate(p); }, {}};
  std::array<Rational, 2> pt{R(-3, 4), R(5, 6)};
  CHECK(qpartial(f, 0, std::span<const Rational>(pt), q) == series_qpartial(s, "x", q).evaluate(pt));
  CHECK(qpartial(f, 1, std::span<const Rational>(pt), q) == series_qpartial(s, "y", q).evaluate(pt));
  CHECK(eta(f, 1, std::span<const Rational>(pt), q) == series_qshift(s, "y", q).evaluate(pt));
}

}  // TEST_SUITE
