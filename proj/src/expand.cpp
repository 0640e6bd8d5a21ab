#include "qcalc/expand.hpp"

#include "qcalc/error.hpp"
#include "qcalc/qcore.hpp"
#include "qcalc/qfunc.hpp"

namespace qcalc {

namespace {

void check_pair(const VarSet& vars, const PdePair& pair) {
  if (pair.xvar == pair.yvar) throw QError(ErrorCode::PreconditionViolated, "pair variables must differ");
  vars.index_of(pair.xvar);
  vars.index_of(pair.yvar);
}

void peel(const TruncatedSeries& f, const std::vector<PdePair>& pairs, const Rational& q, size_t j,
          std::vector<int>& prefix, ExpansionResult& out) {
  if (j == pairs.size()) {
    for (const auto& [idx, c] : f.terms())
      if (total_degree(idx) != 0)
        throw QError(ErrorCode::PreconditionViolated, "series depends on variables outside the pairs");
    Rational c = f.constant_term();
    if (!c.is_zero()) out.lambdas[prefix] = c;
    return;
  }
  const PdePair& pair = pairs[j];
  TruncatedSeries restricted = series_restrict_zero(f, pair.xvar);
  for (int n = 0; n <= f.order(); ++n) {
    // a vanishing (b;q)_n hides the y^n coefficient, so it is an error even
    // when that coefficient reads as zero
    Rational bn = qpoch_finite(pair.b, q, n);
    if (bn.is_zero())
      throw QError(ErrorCode::ZeroDenominator, "(b;q)_n vanishes for pair " + pair.xvar + "," + pair.yvar);
    TruncatedSeries c = series_coefficient_of(restricted, pair.yvar, n);
    if (c.is_zero()) continue;
    prefix.push_back(n);
    peel(c * (Rational(1) / bn), pairs, q, j + 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

TruncatedSeries pde_residual(const TruncatedSeries& f, const PdePair& pair, const Rational& q) {
  check_pair(f.vars(), pair);
  TruncatedSeries lhs = series_qpartial(f - series_qshift(f, pair.yvar, q) * pair.b, pair.xvar, q);
  TruncatedSeries rhs = series_qpartial(f - series_qshift(f, pair.xvar, q) * pair.a, pair.yvar, q);
  return lhs - rhs;
}

ExpansionResult extract_lambdas(const TruncatedSeries& f, const std::vector<PdePair>& pairs,
                                const Rational& q) {
  for (const auto& pair : pairs) {
    if (f.order() == 0) {
      check_pair(f.vars(), pair);
      continue;
    }
    TruncatedSeries r = pde_residual(f, pair, q);
    if (!r.is_zero())
      throw QError(ErrorCode::PdeNotSatisfied,
                   "residual for (" + pair.xvar + "," + pair.yvar + ") is " + r.to_string());
  }
  ExpansionResult out;
  out.order = f.order();
  std::vector<int> prefix;
  peel(f, pairs, q, 0, prefix, out);
  return out;
}

TruncatedSeries reconstruct(const ExpansionResult& res, const std::vector<PdePair>& pairs,
                            const Rational& q, VarSetPtr vars, int order) {
  for (const auto& pair : pairs) check_pair(*vars, pair);
  TruncatedSeries sum(vars, order);
  // cache Phi_n per pair
  std::vector<std::map<int, TruncatedSeries>> cache(pairs.size());
  for (const auto& [idx, lambda] : res.lambdas) {
    if (idx.size() != pairs.size())
      throw QError(ErrorCode::PreconditionViolated, "lambda index length differs from pair count");
    int deg = 0;
    for (int n : idx) deg += n;
    if (deg > order) continue;
    TruncatedSeries term = TruncatedSeries::constant(vars, order, lambda);
    for (size_t j = 0; j < pairs.size(); ++j) {
      auto it = cache[j].find(idx[j]);
      if (it == cache[j].end()) {
        const PdePair& p = pairs[j];
        it = cache[j].emplace(idx[j], phi_series(PhiSpec<Rational>{idx[j], p.a, p.b}, p.xvar, p.yvar, q,
                                                 vars, order)).first;
      }
      term = term * it->second;
    }
    sum = sum + term;
  }
  return sum;
}

}  // namespace qcalc
