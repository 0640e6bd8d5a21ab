#pragma once

// Brute-force reference paths. Nothing here calls into the optimized library
// routines: products are multiplied out factor by factor with powers computed
// from scratch, sums are fixed-length loops, and Gaussian binomials come from
// counting subsets. Only the scalar types are shared.

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "qcalc/hpcomplex.hpp"
#include "qcalc/hpreal.hpp"
#include "qcalc/rational.hpp"

namespace oracle {

using qcalc::HPReal;
using qcalc::Rational;

inline constexpr unsigned kBits = 320;  // well above the 50-digit working precision

inline Rational power(const Rational& x, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r = r * x;
  return r;
}

inline HPReal power(const HPReal& x, int e) {
  HPReal r(1L, kBits);
  for (int i = 0; i < e; ++i) r = r * x;
  return r;
}

inline HPReal hp(const Rational& v) { return HPReal(v, kBits); }

/// prod_{k<n} (1 - a q^k).
inline Rational qpoch(const Rational& a, const Rational& q, int n) {
  Rational r(1);
  for (int k = 0; k < n; ++k) r = r * (Rational(1) - a * power(q, k));
  return r;
}

/// prod_{k<n} (1 - a q^k) in high precision.
inline HPReal qpoch(const HPReal& a, const HPReal& q, int n) {
  HPReal r(1L, kBits);
  for (int k = 0; k < n; ++k) r = r * (1L - a * power(q, k));
  return r;
}

/// (a;q)_oo from a fixed number of factors; callers pick `factors` so that
/// |a| |q|^factors is far below the comparison tolerance.
inline HPReal qpoch_inf(const Rational& a, const Rational& q, int factors) {
  return qpoch(hp(a), hp(q), factors);
}

/// [n k]_q = sum over k-subsets S of {0..n-1} of q^(sum S - k(k-1)/2).
inline Rational qbinomial(int n, int k, const Rational& q) {
  if (k < 0 || k > n) return Rational(0);
  std::vector<long> count(static_cast<size_t>(k * (n - k) + 1), 0);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    int s = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s += i;
    ++count[static_cast<size_t>(s - k * (k - 1) / 2)];
  }
  Rational r(0);
  for (size_t j = 0; j < count.size(); ++j) r = r + Rational(count[j]) * power(q, static_cast<int>(j));
  return r;
}

/// Phi_n^(alpha,beta)(x,y|q) straight from its defining sum.
inline Rational phi(int n, const Rational& alpha, const Rational& beta, const Rational& x,
                    const Rational& y, const Rational& q) {
  Rational r(0);
  for (int k = 0; k <= n; ++k)
    r = r + qbinomial(n, k, q) * qpoch(alpha, q, k) * qpoch(beta, q, n - k) * power(x, k) *
                power(y, n - k);
  return r;
}

/// (f(x) - f(qx)) / x.
inline Rational dq(const std::function<Rational(const Rational&)>& f, const Rational& x,
                   const Rational& q) {
  return (f(x) - f(q * x)) / x;
}

// Sparse polynomials keyed by exponent vectors.
using Poly = std::map<std::vector<int>, Rational>;

inline void add_to(Poly& p, const std::vector<int>& e, const Rational& c) {
  Rational& slot = p[e];
  slot = slot + c;
  if (slot.is_zero()) p.erase(e);
}

/// (f - f|_{var -> q var}) / var, monomial by monomial.
inline Poly qpartial(const Poly& f, size_t var, const Rational& q) {
  Poly out;
  for (const auto& [e, c] : f) {
    if (e[var] == 0) continue;
    std::vector<int> d = e;
    d[var] -= 1;
    add_to(out, d, c * (Rational(1) - power(q, e[var])));
  }
  return out;
}

inline Poly qshift(const Poly& f, size_t var, const Rational& q) {
  Poly out;
  for (const auto& [e, c] : f) add_to(out, e, c * power(q, e[var]));
  return out;
}

inline Poly sub(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [e, c] : b) add_to(out, e, -c);
  return out;
}

inline Poly scale(const Poly& a, const Rational& s) {
  Poly out;
  for (const auto& [e, c] : a) add_to(out, e, c * s);
  return out;
}

/// d_x(f - b eta_y f) - d_y(f - a eta_x f) over variables (x, y) = (0, 1).
inline Poly pde_residual(const Poly& f, const Rational& a, const Rational& b, const Rational& q) {
  return sub(qpartial(sub(f, scale(qshift(f, 1, q), b)), 0, q),
             qpartial(sub(f, scale(qshift(f, 0, q), a)), 1, q));
}

/// Coefficients c_0..c_order of (c t;q)_oo: (-1)^n q^(n(n-1)/2) c^n / (q;q)_n.
inline std::vector<Rational> euler_coeffs(const Rational& c, const Rational& q, int order) {
  std::vector<Rational> out;
  for (int n = 0; n <= order; ++n) {
    Rational v = power(c, n) * power(q, n * (n - 1) / 2) / qpoch(q, q, n);
    out.push_back(n % 2 ? -v : v);
  }
  return out;
}

/// Coefficients of 1/(c t;q)_oo: c^n / (q;q)_n.
inline std::vector<Rational> euler_inverse_coeffs(const Rational& c, const Rational& q, int order) {
  std::vector<Rational> out;
  for (int n = 0; n <= order; ++n) out.push_back(power(c, n) / qpoch(q, q, n));
  return out;
}

inline std::vector<Rational> convolve(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size(), Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; i + j < out.size() && j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  return out;
}

/// (1-q) sum_{n<N} [b f(b q^n) - a f(a q^n)] q^n with a fixed N.
inline HPReal jackson(const std::function<HPReal(const HPReal&)>& f, const Rational& a,
                      const Rational& b, const Rational& q, int terms) {
  HPReal sum(0L, kBits);
  const HPReal A = hp(a), B = hp(b), Q = hp(q);
  for (int n = 0; n < terms; ++n) {
    HPReal qn = power(Q, n);
    if (!b.is_zero()) sum += B * f(B * qn) * qn;
    if (!a.is_zero()) sum -= A * f(A * qn) * qn;
  }
  return (1L - Q) * sum;
}

/// Relative difference |x - y| / max(|x|, |y|).
inline double rel_diff(const HPReal& x, const HPReal& y) {
  HPReal d = (x - y).abs();
  HPReal m = x.abs() > y.abs() ? x.abs() : y.abs();
  if (m.is_zero()) return d.to_double();
  return (d / m).to_double();
}

}  // namespace oracle
