#include <algorithm>

#include "builders.hpp"
#include "qcalc/error.hpp"
#include "qcalc/expand.hpp"
#include "qcalc/fps.hpp"
#include "qcalc/qcore.hpp"
#include "qcalc/qfunc.hpp"

namespace qcalc::harness {

namespace {

using TS = TruncatedSeries;

TS euler(const Rational& c, const SeriesIndex& mono, const Rational& q, const VarSetPtr& v, int order) {
  return euler_pochhammer_series(c, mono, q, v, order);
}

TS poch(const Rational& c, const SeriesIndex& mono, const Rational& q, int n, const VarSetPtr& v, int order) {
  return pochhammer_series(c, mono, q, n, v, order);
}

// sum_{n} Phi_{n+m}^{(a,b)}(x,y) t^{n+m} / (q;q)_n, n+m <= order
TS phi_genfun_lhs(const Rational& a, const Rational& b, const Rational& x, const Rational& y,
                  const Rational& q, int m, const VarSetPtr& v, int order) {
  TS out(v, order);
  for (int n = 0; n + m <= order; ++n) {
    Rational coeff = phi_eval(PhiSpec<Rational>{n + m, a, b}, x, y, q) * qpoch_recip(q, q, n);
    out.add_term(SeriesIndex{n + m}, coeff);
  }
  return out;
}

}  // namespace

std::vector<ExactPart> exact_pde_phi(const IdentityCase& c) {
  const Binding& b = c.binding;
  const int n = int_param(b, "n");
  const Rational alpha = real_param(b, "alpha"), beta = real_param(b, "beta"), q = real_param(b, "q");
  const int order = std::max(c.order, n + 1);
  VarSetPtr v = make_varset({"x", "y"});
  TS f = phi_series(PhiSpec<Rational>{n, alpha, beta}, "x", "y", q, v, order);
  TS lhs = series_qpartial(f - series_qshift(f, "y", q) * beta, "x", q);
  TS rhs = series_qpartial(f - series_qshift(f, "x", q) * alpha, "y", q);
  return {{"pde", lhs, rhs}};
}

std::vector<ExactPart> exact_expansion_roundtrip(const IdentityCase& c) {
  const Binding& bind = c.binding;
  const int k = int_param(bind, "k");
  const Rational q = real_param(bind, "q");
  const int order = c.order;
  std::vector<std::string> names;
  for (int j = 1; j <= k; ++j) {
    names.push_back(indexed("x", j));
    names.push_back(indexed("y", j));
  }
  VarSetPtr v = make_varset(names);
  std::vector<PdePair> pairs;
  TS f = TS::constant(v, order, Rational(1));
  std::vector<Rational> ts;
  for (int j = 1; j <= k; ++j) {
    const Rational t = real_param(bind, indexed("t", j));
    const Rational a = real_param(bind, indexed("a", j));
    const Rational b = real_param(bind, indexed("b", j));
    const std::string xv = indexed("x", j), yv = indexed("y", j);
    SeriesIndex ix = unit_index(*v, xv), iy = unit_index(*v, yv);
    // (a x t, b y t; q)_oo / (x t, y t; q)_oo
    TS num = euler(a * t, ix, q, v, order) * euler(b * t, iy, q, v, order);
    TS den = euler(t, ix, q, v, order) * euler(t, iy, q, v, order);
    f = f * num * series_invert(den);
    pairs.push_back({xv, yv, a, b});
    ts.push_back(t);
  }
  ExpansionResult res = extract_lambdas(f, pairs, q);

  std::vector<std::string> idx_names;
  for (int j = 1; j <= k; ++j) idx_names.push_back(indexed("n", j));
  VarSetPtr nv = make_varset(idx_names);
  TS got(nv, order), want(nv, order);
  for (const auto& [idx, lambda] : res.lambdas) got.add_term(idx, lambda);
  // expected lambda_{n_1..n_k} = prod_j t_j^{n_j} / (q;q)_{n_j}
  std::vector<int> idx(k, 0);
  std::function<void(int, int)> fill = [&](int j, int left) {
    if (j == k) {
      Rational val(1);
      for (int i = 0; i < k; ++i) val = val * ts[i].pow(idx[i]) * qpoch_recip(q, q, idx[i]);
      want.add_term(idx, val);
      return;
    }
    for (int n = 0; n <= left; ++n) {
      idx[j] = n;
      fill(j + 1, left - n);
    }
    idx[j] = 0;
  };
  fill(0, order);
  TS back = reconstruct(res, pairs, q, v, order);
  return {{"lambda", got, want}, {"reconstruct", back, f}};
}

std::vector<ExactPart> exact_genfun_basic(const IdentityCase& c) {
  const Binding& bd = c.binding;
  const Rational q = real_param(bd, "q"), a = real_param(bd, "a"), b = real_param(bd, "b");
  const Rational x = real_param(bd, "x"), y = real_param(bd, "y");
  const int order = c.order;
  VarSetPtr v = make_varset({"t"});
  const SeriesIndex t{1};
  TS lhs = phi_genfun_lhs(a, b, x, y, q, 0, v, order);
  TS rhs = euler(a * x, t, q, v, order) * euler(b * y, t, q, v, order) *
           series_invert(euler(x, t, q, v, order) * euler(y, t, q, v, order));
  return {{"t-series", lhs, rhs}};
}

std::vector<ExactPart> exact_genfun_shifted(const IdentityCase& c) {
  const Binding& bd = c.binding;
  const Rational q = real_param(bd, "q"), a = real_param(bd, "a"), b = real_param(bd, "b");
  const Rational x = real_param(bd, "x"), y = real_param(bd, "y");
  const int m = int_param(bd, "m");
  const int order = c.order;
  VarSetPtr v = make_varset({"t"});
  const SeriesIndex t{1};
  TS lhs = phi_genfun_lhs(a, b, x, y, q, m, v, order);
  TS prefactor = euler(a * x, t, q, v, order) * euler(b * y, t, q, v, order) *
                 series_invert(euler(x, t, q, v, order) * euler(y, t, q, v, order));
  // terminating 3phi2(q^{-m}, xt, yt; axt, byt; q, q)
  TS phi32(v, order);
  const Rational qm = q.pow(-m);
  for (int k = 0; k <= m; ++k) {
    Rational coeff = qpoch_finite(qm, q, k) * qpoch_recip(q, q, k) * q.pow(k);
    TS term = poch(x, t, q, k, v, order) * poch(y, t, q, k, v, order) *
              series_invert(poch(a * x, t, q, k, v, order) * poch(b * y, t, q, k, v, order));
    phi32 = phi32 + term * coeff;
  }
  return {{"t-series", lhs, prefactor * phi32}};
}

std::vector<ExactPart> exact_genfun_saalschutz(const IdentityCase& c) {
  // The formal variable s scales b -> b s and c -> c s, which keeps cd = ab
  // and turns every infinite product into a power series in (t, s).
  const Binding& bd = c.binding;
  const Rational q = real_param(bd, "q"), a = real_param(bd, "a"), b = real_param(bd, "b");
  const Rational cc = real_param(bd, "c"), d = real_param(bd, "d");
  const Rational x = real_param(bd, "x"), y = real_param(bd, "y");
  const int order = c.order;
  VarSetPtr v = make_varset({"t", "s"});
  const SeriesIndex t{1, 0}, s{0, 1}, ts{1, 1};

  TS lhs(v, order);
  std::vector<Rational> a_poch(order + 1);
  for (int k = 0; k <= order; ++k) a_poch[k] = qpoch_finite(a, q, k);
  for (int n = 0; n <= order; ++n) {
    // Phi_n^{(a, b s)}(x, y) as a series in s
    TS phi(v, order);
    std::vector<Rational> row = qbinomial_row(n, q);
    for (int k = 0; k <= n; ++k) {
      Rational coeff = row[k] * a_poch[k] * x.pow(k) * y.pow(n - k);
      if (coeff.is_zero()) continue;
      phi = phi + poch(b, s, q, n - k, v, order) * coeff;
    }
    TS term = poch(cc, s, q, n, v, order) * phi * series_invert(poch(a * b, s, q, n, v, order));
    term = term * TS::monomial(v, order, SeriesIndex{n, 0}, qpoch_recip(q, q, n));
    lhs = lhs + term;
  }

  TS prefactor = euler(cc, s, q, v, order) * euler(a * x, t, q, v, order) * euler(b * y, ts, q, v, order) *
                 series_invert(euler(a * b, s, q, v, order) * euler(x, t, q, v, order) *
                               euler(y, t, q, v, order));
  // 3phi2(d, xt, yt; axt, b s yt; q, c s); the n-th term carries s^n
  TS phi32(v, order);
  for (int n = 0; n <= order; ++n) {
    Rational coeff = qpoch_finite(d, q, n) * qpoch_recip(q, q, n) * cc.pow(n);
    if (coeff.is_zero()) continue;
    TS term = poch(x, t, q, n, v, order) * poch(y, t, q, n, v, order) *
              series_invert(poch(a * x, t, q, n, v, order) * poch(b * y, ts, q, n, v, order));
    phi32 = phi32 + term * TS::monomial(v, order, SeriesIndex{0, n}, coeff);
  }
  return {{"ts-series", lhs, prefactor * phi32}};
}

}  // namespace qcalc::harness
