#include "qcalc/fps.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "qcalc/error.hpp"
#include "qcalc/qcore.hpp"

namespace qcalc {

VarSet::VarSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw QError(ErrorCode::VarSetMismatch, "a VarSet needs at least one variable");
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size()) throw QError(ErrorCode::VarSetMismatch, "duplicate variable names");
}

std::optional<size_t> VarSet::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<size_t>(it - names_.begin());
}

size_t VarSet::index_of(const std::string& name) const {
  if (auto i = find(name)) return *i;
  throw QError(ErrorCode::UnknownVariable, "variable '" + name + "' is not in the VarSet");
}

VarSetPtr make_varset(std::vector<std::string> names) {
  return std::make_shared<const VarSet>(std::move(names));
}

int total_degree(const SeriesIndex& idx) { return std::accumulate(idx.begin(), idx.end(), 0); }

bool GradedLexLess::operator()(const SeriesIndex& a, const SeriesIndex& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

SeriesIndex unit_index(const VarSet& vars, const std::string& var, int power) {
  SeriesIndex idx(vars.size(), 0);
  idx[vars.index_of(var)] = power;
  return idx;
}

// ---------------------------------------------------------------------------

TruncatedSeries::TruncatedSeries(VarSetPtr vars, int order) : vars_(std::move(vars)), order_(order) {
  if (!vars_) throw QError(ErrorCode::VarSetMismatch, "null VarSet");
  if (order_ < 0) throw QError(ErrorCode::OrderTooSmall, "negative truncation order");
}

TruncatedSeries TruncatedSeries::constant(VarSetPtr vars, int order, const Rational& c) {
  TruncatedSeries s(std::move(vars), order);
  s.add_term(SeriesIndex(s.vars().size(), 0), c);
  return s;
}

TruncatedSeries TruncatedSeries::variable(VarSetPtr vars, int order, const std::string& name) {
  TruncatedSeries s(std::move(vars), order);
  s.add_term(unit_index(s.vars(), name), Rational(1));
  return s;
}

TruncatedSeries TruncatedSeries::monomial(VarSetPtr vars, int order, const SeriesIndex& idx,
                                          const Rational& c) {
  TruncatedSeries s(std::move(vars), order);
  if (idx.size() != s.vars().size()) throw QError(ErrorCode::VarSetMismatch, "index length mismatch");
  s.add_term(idx, c);
  return s;
}

Rational TruncatedSeries::coefficient(const SeriesIndex& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational TruncatedSeries::constant_term() const { return coefficient(SeriesIndex(vars_->size(), 0)); }

void TruncatedSeries::add_term(const SeriesIndex& idx, const Rational& c) {
  if (c.is_zero() || total_degree(idx) > order_) return;
  auto [it, inserted] = terms_.try_emplace(idx, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TruncatedSeries TruncatedSeries::truncated(int new_order) const {
  TruncatedSeries out(vars_, std::min(new_order, order_));
  for (const auto& [idx, c] : terms_)
    if (total_degree(idx) <= out.order_) out.terms_.emplace_hint(out.terms_.end(), idx, c);
  return out;
}

Rational TruncatedSeries::evaluate(std::span<const Rational> point) const {
  if (point.size() != vars_->size()) throw QError(ErrorCode::VarSetMismatch, "point has wrong arity");
  Rational sum(0);
  for (const auto& [idx, c] : terms_) {
    Rational term = c;
    for (size_t i = 0; i < idx.size(); ++i)
      if (idx[i] != 0) term *= point[i].pow(idx[i]);
    sum += term;
  }
  return sum;
}

std::string TruncatedSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [idx, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << c.str();
    for (size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] == 0) continue;
      out << '*' << vars_->name(i);
      if (idx[i] != 1) out << '^' << idx[i];
    }
  }
  return out.str();
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return *a.vars_ == *b.vars_ && a.order_ == b.order_ && a.terms_ == b.terms_;
}

// ---------------------------------------------------------------------------

namespace {

void require_same_vars(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.vars_ptr() != b.vars_ptr() && !(a.vars() == b.vars()))
    throw QError(ErrorCode::VarSetMismatch, "series over different VarSets");
}

using Bucket = std::vector<std::pair<const SeriesIndex*, const Rational*>>;

std::vector<Bucket> by_degree(const TruncatedSeries& s) {
  std::vector<Bucket> buckets(static_cast<size_t>(s.order()) + 1);
  for (const auto& [idx, c] : s.terms()) buckets[static_cast<size_t>(total_degree(idx))].emplace_back(&idx, &c);
  return buckets;
}

// Adds the product of two homogeneous buckets into `out`.
void accumulate_product(const Bucket& a, const Bucket& b, TruncatedSeries& out) {
  SeriesIndex idx;
  for (const auto& [ia, ca] : a) {
    for (const auto& [ib, cb] : b) {
      idx.resize(ia->size());
      for (size_t i = 0; i < idx.size(); ++i) idx[i] = (*ia)[i] + (*ib)[i];
      out.add_term(idx, *ca * *cb);
    }
  }
}

}  // namespace

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_vars(a, b);
  TruncatedSeries out = a.truncated(std::min(a.order(), b.order()));
  for (const auto& [idx, c] : b.terms()) out.add_term(idx, c);
  return out;
}

TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_vars(a, b);
  TruncatedSeries out = a.truncated(std::min(a.order(), b.order()));
  for (const auto& [idx, c] : b.terms()) out.add_term(idx, -c);
  return out;
}

TruncatedSeries series_scale(const TruncatedSeries& a, const Rational& c) {
  TruncatedSeries out(a.vars_ptr(), a.order());
  if (c.is_zero()) return out;
  for (const auto& [idx, v] : a.terms()) out.add_term(idx, v * c);
  return out;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_vars(a, b);
  const int order = std::min(a.order(), b.order());
  TruncatedSeries out(a.vars_ptr(), order);
  auto ba = by_degree(a), bb = by_degree(b);
  for (int da = 0; da <= std::min(order, a.order()); ++da)
    for (int db = 0; da + db <= order && db <= b.order(); ++db)
      accumulate_product(ba[static_cast<size_t>(da)], bb[static_cast<size_t>(db)], out);
  return out;
}

TruncatedSeries series_invert(const TruncatedSeries& s) {
  const Rational f0 = s.constant_term();
  if (f0.is_zero()) throw QError(ErrorCode::NonUnitConstantTerm, "series has zero constant term");
  const Rational inv0 = Rational(1) / f0;
  auto fs = by_degree(s);
  // g_d = -inv0 * sum_{e=1..d} f_e g_{d-e}, built degree by degree.
  std::vector<TruncatedSeries> g;
  g.push_back(TruncatedSeries::constant(s.vars_ptr(), s.order(), inv0));
  for (int d = 1; d <= s.order(); ++d) {
    TruncatedSeries acc(s.vars_ptr(), s.order());
    for (int e = 1; e <= d; ++e) {
      if (fs[static_cast<size_t>(e)].empty()) continue;
      auto gb = by_degree(g[static_cast<size_t>(d - e)]);
      accumulate_product(fs[static_cast<size_t>(e)], gb[static_cast<size_t>(d - e)], acc);
    }
    g.push_back(series_scale(acc, -inv0));
  }
  TruncatedSeries out(s.vars_ptr(), s.order());
  for (const auto& part : g)
    for (const auto& [idx, c] : part.terms()) out.add_term(idx, c);
  return out;
}

TruncatedSeries series_qshift(const TruncatedSeries& s, const std::string& var, const Rational& q) {
  const size_t v = s.vars().index_of(var);
  TruncatedSeries out(s.vars_ptr(), s.order());
  for (const auto& [idx, c] : s.terms()) out.add_term(idx, c * q.pow(idx[v]));
  return out;
}

TruncatedSeries series_qpartial(const TruncatedSeries& s, const std::string& var, const Rational& q) {
  const size_t v = s.vars().index_of(var);
  if (s.order() < 1) throw QError(ErrorCode::OrderTooSmall, "q-partial of an order-0 series");
  TruncatedSeries out(s.vars_ptr(), s.order() - 1);
  for (const auto& [idx, c] : s.terms()) {
    const int e = idx[v];
    if (e == 0) continue;
    SeriesIndex lowered = idx;
    lowered[v] = e - 1;
    out.add_term(lowered, c * (Rational(1) - q.pow(e)));
  }
  return out;
}

TruncatedSeries series_restrict_zero(const TruncatedSeries& s, const std::string& var) {
  const size_t v = s.vars().index_of(var);
  TruncatedSeries out(s.vars_ptr(), s.order());
  for (const auto& [idx, c] : s.terms())
    if (idx[v] == 0) out.add_term(idx, c);
  return out;
}

TruncatedSeries series_coefficient_of(const TruncatedSeries& s, const std::string& var, int power) {
  const size_t v = s.vars().index_of(var);
  if (power < 0 || power > s.order()) throw QError(ErrorCode::OrderTooSmall, "power beyond order");
  TruncatedSeries out(s.vars_ptr(), s.order() - power);
  for (const auto& [idx, c] : s.terms()) {
    if (idx[v] != power) continue;
    SeriesIndex rest = idx;
    rest[v] = 0;
    out.add_term(rest, c);
  }
  return out;
}

Rational coefficient(const TruncatedSeries& s, const SeriesIndex& idx) { return s.coefficient(idx); }

namespace {

SeriesIndex scaled(const SeriesIndex& mono, int n) {
  SeriesIndex out = mono;
  for (int& e : out) e *= n;
  return out;
}

int checked_degree(const SeriesIndex& mono, const VarSet& vars) {
  if (mono.size() != vars.size()) throw QError(ErrorCode::VarSetMismatch, "monomial length mismatch");
  int d = total_degree(mono);
  if (d <= 0) throw QError(ErrorCode::PreconditionViolated, "expansion monomial must be nonconstant");
  return d;
}

}  // namespace

TruncatedSeries euler_pochhammer_series(const Rational& coeff, const SeriesIndex& mono,
                                        const Rational& q, VarSetPtr vars, int order) {
  const int d = checked_degree(mono, *vars);
  TruncatedSeries out(vars, order);
  Rational qq(1);         // (q;q)_n
  Rational cn(1);         // c^n
  Rational qtri(1);       // q^{n(n-1)/2}
  Rational qn(1);         // q^n
  for (int n = 0; n * d <= order; ++n) {
    if (n > 0) {
      qtri *= qn;  // q^{n(n-1)/2} = q^{(n-1)(n-2)/2} * q^{n-1}
      qn *= q;
      qq *= Rational(1) - qn;
      cn *= coeff;
    }
    if (qq.is_zero()) throw QError(ErrorCode::ZeroDenominator, "(q;q)_n vanishes");
    Rational c = qtri * cn / qq;
    out.add_term(scaled(mono, n), (n % 2 == 0) ? c : -c);
  }
  return out;
}

TruncatedSeries euler_pochhammer_series(const Rational& coeff, const std::string& var,
                                        const Rational& q, VarSetPtr vars, int order) {
  SeriesIndex mono = unit_index(*vars, var);
  return euler_pochhammer_series(coeff, mono, q, std::move(vars), order);
}

TruncatedSeries euler_pochhammer_inverse_series(const Rational& coeff, const SeriesIndex& mono,
                                                const Rational& q, VarSetPtr vars, int order) {
  const int d = checked_degree(mono, *vars);
  TruncatedSeries out(vars, order);
  Rational qq(1), cn(1), qn(1);
  for (int n = 0; n * d <= order; ++n) {
    if (n > 0) {
      qn *= q;
      qq *= Rational(1) - qn;
      cn *= coeff;
    }
    if (qq.is_zero()) throw QError(ErrorCode::ZeroDenominator, "(q;q)_n vanishes");
    out.add_term(scaled(mono, n), cn / qq);
  }
  return out;
}

TruncatedSeries pochhammer_series(const Rational& coeff, const SeriesIndex& mono, const Rational& q,
                                  int n, VarSetPtr vars, int order) {
  if (n < 0) throw QError(ErrorCode::NegativeIndexUndefined, "(c m;q)_n needs n >= 0");
  if (mono.size() != vars->size()) throw QError(ErrorCode::VarSetMismatch, "monomial length mismatch");
  TruncatedSeries out = TruncatedSeries::constant(vars, order, Rational(1));
  Rational cqj = coeff;
  for (int j = 0; j < n; ++j) {
    TruncatedSeries factor = TruncatedSeries::constant(vars, order, Rational(1));
    factor.add_term(mono, -cqj);
    out = series_mul(out, factor);
    cqj *= q;
  }
  return out;
}

}  // namespace qcalc
