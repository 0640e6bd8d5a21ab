#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcalc/error.hpp"
#include "qcalc/rational.hpp"

namespace qcalc {

/// Ordered set of distinct formal variable names.
class VarSet {
 public:
  explicit VarSet(std::vector<std::string> names);

  size_t size() const { return names_.size(); }
  const std::string& name(size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<size_t> find(const std::string& name) const;
  /// Index of `name`; throws UnknownVariable.
  size_t index_of(const std::string& name) const;

  friend bool operator==(const VarSet& a, const VarSet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

VarSetPtr make_varset(std::vector<std::string> names);

/// Exponent vector, one entry per variable of the owning VarSet.
using SeriesIndex = std::vector<int>;

int total_degree(const SeriesIndex& idx);

/// Total degree first, then lexicographic on the exponent vector.
struct GradedLexLess {
  bool operator()(const SeriesIndex& a, const SeriesIndex& b) const;
};

/// Multivariate power series with rational coefficients, truncated at a total
/// degree. Exact zeros are never stored.
class TruncatedSeries {
 public:
  using Terms = std::map<SeriesIndex, Rational, GradedLexLess>;

  TruncatedSeries(VarSetPtr vars, int order);

  static TruncatedSeries constant(VarSetPtr vars, int order, const Rational& c);
  static TruncatedSeries variable(VarSetPtr vars, int order, const std::string& name);
  static TruncatedSeries monomial(VarSetPtr vars, int order, const SeriesIndex& idx,
                                  const Rational& c);

  const VarSet& vars() const { return *vars_; }
  const VarSetPtr& vars_ptr() const { return vars_; }
  int order() const { return order_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const SeriesIndex& idx) const;
  Rational constant_term() const;

  /// Adds c to the coefficient at idx; ignored beyond the truncation order.
  void add_term(const SeriesIndex& idx, const Rational& c);

  /// Same series cut down to a smaller total order.
  TruncatedSeries truncated(int new_order) const;

  Rational evaluate(std::span<const Rational> point) const;

  /// Canonical text: terms sorted by (total degree, lexicographic index),
  /// coefficients as exact "p/q", e.g. "1 + -1*t^2".
  std::string to_string() const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  VarSetPtr vars_;
  int order_;
  Terms terms_;
};

// Ring operations. Operands must share a VarSet (VarSetMismatch otherwise);
// results are truncated to the smaller of the two orders.
TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_scale(const TruncatedSeries& a, const Rational& c);
/// 1/s through the homogeneous-component recurrence; NonUnitConstantTerm
/// if the constant term is zero.
TruncatedSeries series_invert(const TruncatedSeries& s);

inline TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) { return series_add(a, b); }
inline TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return series_sub(a, b); }
inline TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return series_mul(a, b); }
inline TruncatedSeries operator*(const TruncatedSeries& a, const Rational& c) { return series_scale(a, c); }
inline TruncatedSeries operator*(const Rational& c, const TruncatedSeries& a) { return series_scale(a, c); }

/// Substitution var -> q*var.
TruncatedSeries series_qshift(const TruncatedSeries& s, const std::string& var, const Rational& q);

/// (f - f|_{var -> q var}) / var. The result has order one less than `s`.
TruncatedSeries series_qpartial(const TruncatedSeries& s, const std::string& var, const Rational& q);

/// f with var set to 0.
TruncatedSeries series_restrict_zero(const TruncatedSeries& s, const std::string& var);

/// Coefficient of var^power as a series in the remaining variables (the var
/// exponent is removed), truncated at order - power.
TruncatedSeries series_coefficient_of(const TruncatedSeries& s, const std::string& var, int power);

Rational coefficient(const TruncatedSeries& s, const SeriesIndex& idx);

/// (c * m; q)_oo expanded in the monomial m:
///   sum_n (-1)^n q^{n(n-1)/2} c^n m^n / (q;q)_n.
TruncatedSeries euler_pochhammer_series(const Rational& coeff, const SeriesIndex& mono,
                                        const Rational& q, VarSetPtr vars, int order);
TruncatedSeries euler_pochhammer_series(const Rational& coeff, const std::string& var,
                                        const Rational& q, VarSetPtr vars, int order);

/// 1/(c * m; q)_oo = sum_n c^n m^n / (q;q)_n.
TruncatedSeries euler_pochhammer_inverse_series(const Rational& coeff, const SeriesIndex& mono,
                                                const Rational& q, VarSetPtr vars, int order);

/// Finite product (c * m; q)_n as a truncated series.
TruncatedSeries pochhammer_series(const Rational& coeff, const SeriesIndex& mono,
                                  const Rational& q, int n, VarSetPtr vars, int order);

/// Exponent vector of a single variable raised to `power`.
SeriesIndex unit_index(const VarSet& vars, const std::string& var, int power = 1);

}  // namespace qcalc
