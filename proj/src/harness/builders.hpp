#pragma once

#include "qcalc/harness/identity.hpp"

namespace qcalc::harness {

std::vector<ExactPart> exact_pde_phi(const IdentityCase& c);
std::vector<ExactPart> exact_expansion_roundtrip(const IdentityCase& c);
std::vector<ExactPart> exact_genfun_basic(const IdentityCase& c);
std::vector<ExactPart> exact_genfun_shifted(const IdentityCase& c);
std::vector<ExactPart> exact_genfun_saalschutz(const IdentityCase& c);

NumericSides numeric_genfun_basic(const IdentityCase& c, const EvalContext& ctx);
NumericSides numeric_genfun_shifted(const IdentityCase& c, const EvalContext& ctx);
NumericSides numeric_genfun_saalschutz(const IdentityCase& c, const EvalContext& ctx);
NumericSides numeric_andrews_lauricella(const IdentityCase& c, const EvalContext& ctx);
NumericSides numeric_liu_lauricella(const IdentityCase& c, const EvalContext& ctx);

NumericSides numeric_alsalam_verma(const IdentityCase& c, const EvalContext& ctx);
NumericSides numeric_phi_qint_rep(const IdentityCase& c, const EvalContext& ctx);
NumericSides numeric_rs_qint_rep(const IdentityCase& c, const EvalContext& ctx);
NumericSides numeric_multilinear_qint(const IdentityCase& c, const EvalContext& ctx);
NumericSides numeric_multilinear_qint_m(const IdentityCase& c, const EvalContext& ctx);
NumericSides numeric_andrews_askey(const IdentityCase& c, const EvalContext& ctx);
NumericSides numeric_wang_moment(const IdentityCase& c, const EvalContext& ctx);
NumericSides numeric_liu_qint(const IdentityCase& c, const EvalContext& ctx);

}  // namespace qcalc::harness
