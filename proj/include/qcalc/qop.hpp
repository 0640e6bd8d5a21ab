#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qcalc/error.hpp"
#include "qcalc/scalar.hpp"

namespace qcalc {

/// Black-box function of `arity` scalar arguments. The optional guard inspects
/// a point before evaluation and throws when the function is undefined there.
template <QScalar S>
struct SampledFunction {
  int arity = 1;
  std::function<S(std::span<const S>)> evaluator;
  std::function<void(std::span<const S>)> guard;

  S operator()(std::span<const S> point) const {
    if (static_cast<int>(point.size()) != arity)
      throw QError(ErrorCode::IndexOutOfRange, "point arity does not match the function");
    if (guard) guard(point);
    return evaluator(point);
  }
  S operator()(const S& x) const { return (*this)(std::span<const S>(&x, 1)); }
};

template <QScalar S>
SampledFunction<S> make_unary(std::function<S(const S&)> f) {
  return {1, [f = std::move(f)](std::span<const S> p) { return f(p[0]); }, {}};
}

/// D_q f(x) = (f(x) - f(qx)) / x.
template <QScalar S>
S dq(const SampledFunction<S>& f, const S& x, const S& q) {
  if (is_zero(x)) throw QError(ErrorCode::ZeroPoint, "D_q divides by x");
  S qx = q * x;
  return (f(x) - f(qx)) / x;
}

/// D_q^n f(x), computed on the grid x q^j (j = 0..n) by repeated differencing.
template <QScalar S>
S dq_iter(const SampledFunction<S>& f, const S& x, const S& q, int n) {
  if (n < 0) throw QError(ErrorCode::IndexOutOfRange, "D_q^n needs n >= 0");
  if (n == 0) return f(x);
  std::vector<S> grid, values;
  S point = x;
  for (int j = 0; j <= n; ++j) {
    if (is_zero(point)) throw QError(ErrorCode::ZeroPoint, "D_q^n grid reaches 0");
    grid.push_back(point);
    values.push_back(f(point));
    point = point * q;
  }
  // values[j] holds D_q^i f at x q^j after round i
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j + i <= n; ++j) values[j] = (values[j] - values[j + 1]) / grid[j];
  return values[0];
}

namespace detail {

template <QScalar S>
void check_index(const SampledFunction<S>& f, int var) {
  if (var < 0 || var >= f.arity) throw QError(ErrorCode::IndexOutOfRange, "variable index out of range");
}

}  // namespace detail

/// eta_{var} f evaluated at `point`: f with coordinate `var` scaled by q.
template <QScalar S>
S eta(const SampledFunction<S>& f, int var, std::span<const S> point, const S& q) {
  detail::check_index(f, var);
  std::vector<S> shifted(point.begin(), point.end());
  shifted[var] = shifted[var] * q;
  return f(shifted);
}

/// q-partial derivative in coordinate `var` at `point`.
template <QScalar S>
S qpartial(const SampledFunction<S>& f, int var, std::span<const S> point, const S& q) {
  detail::check_index(f, var);
  if (is_zero(point[var])) throw QError(ErrorCode::ZeroPoint, "q-partial divides by the coordinate");
  return (f(point) - eta(f, var, point, q)) / point[var];
}

/// eta_{var} f as a new sampled function.
template <QScalar S>
SampledFunction<S> eta_function(SampledFunction<S> f, int var, S q) {
  detail::check_index(f, var);
  int arity = f.arity;
  return {arity, [f = std::move(f), var, q](std::span<const S> p) { return eta(f, var, p, q); }, {}};
}

/// d_{q,var} f as a new sampled function.
template <QScalar S>
SampledFunction<S> qpartial_function(SampledFunction<S> f, int var, S q) {
  detail::check_index(f, var);
  int arity = f.arity;
  return {arity, [f = std::move(f), var, q](std::span<const S> p) { return qpartial(f, var, p, q); }, {}};
}

}  // namespace qcalc
