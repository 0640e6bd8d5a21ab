#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcalc/fps.hpp"
#include "qcalc/error.hpp"
#include "qcalc/rational.hpp"

namespace qcalc {

/// One equation d_x (1 - b eta_y) f = d_y (1 - a eta_x) f of the system.
struct PdePair {
  std::string xvar;
  std::string yvar;
  Rational a;
  Rational b;
};

struct ExpansionResult {
  std::map<std::vector<int>, Rational> lambdas;  // (n_1..n_k) -> lambda, zeros omitted
  int order = 0;
};

/// d_x(f - b eta_y f) - d_y(f - a eta_x f), truncated at order - 1.
TruncatedSeries pde_residual(const TruncatedSeries& f, const PdePair& pair, const Rational& q);

/// Coefficients of f in the basis prod_j Phi_{n_j}^{(a_j,b_j)}(x_j, y_j | q).
/// Every residual must vanish (PdeNotSatisfied otherwise). Pairs are peeled in
/// order: set x_j = 0, read the y_j^n coefficient and divide by (b_j;q)_n.
ExpansionResult extract_lambdas(const TruncatedSeries& f, const std::vector<PdePair>& pairs,
                                const Rational& q);

/// sum lambda_n prod_j Phi_{n_j}^{(a_j,b_j)}(x_j, y_j | q) over the VarSet `vars`.
TruncatedSeries reconstruct(const ExpansionResult& res, const std::vector<PdePair>& pairs,
                            const Rational& q, VarSetPtr vars, int order);

}  // namespace qcalc
