#include "qcalc/context.hpp"

#include <cmath>

#include "qcalc/error.hpp"

namespace qcalc {

namespace {

void validate(const EvalContext& ctx) {
  if (ctx.precision_digits < EvalContext::kMinDigits || ctx.precision_digits > EvalContext::kMaxDigits)
    throw QError(ErrorCode::InvalidContext,
                 "precision_digits must lie in [30, 250], got " + std::to_string(ctx.precision_digits));
  if (!(ctx.q.abs() < HPReal(1L, ctx.bits())))
    throw QError(ErrorCode::InvalidContext, "|q| < 1 is required");
  if (!(ctx.tail_epsilon >= std::pow(10.0, 5 - ctx.precision_digits) * (1 - 1e-12)))
    throw QError(ErrorCode::InvalidContext, "tail_epsilon below 10^(5 - precision_digits)");
  if (ctx.max_terms < 16) throw QError(ErrorCode::InvalidContext, "max_terms must be >= 16");
}

}  // namespace

EvalContext EvalContext::make(const Rational& q, int digits, std::optional<double> tail_epsilon,
                              int max_terms) {
  EvalContext ctx;
  ctx.precision_digits = digits;
  ctx.q = HPComplex(q, bits_for_digits(digits));
  ctx.q_exact = q;
  ctx.tail_epsilon = tail_epsilon.value_or(std::pow(10.0, 5 - digits));
  ctx.max_terms = max_terms;
  validate(ctx);
  return ctx;
}

EvalContext EvalContext::make(const HPComplex& q, int digits, std::optional<double> tail_epsilon,
                              int max_terms) {
  EvalContext ctx;
  ctx.precision_digits = digits;
  unsigned b = bits_for_digits(digits);
  ctx.q = HPComplex(q.real() + HPReal(0L, b), q.imag() + HPReal(0L, b));
  ctx.tail_epsilon = tail_epsilon.value_or(std::pow(10.0, 5 - digits));
  ctx.max_terms = max_terms;
  validate(ctx);
  return ctx;
}

unsigned EvalContext::bits() const { return bits_for_digits(precision_digits); }

double EvalContext::zero_threshold() const { return std::pow(10.0, 2 - precision_digits); }

EvalContext EvalContext::with_tail_epsilon(double eps) const {
  EvalContext ctx = *this;
  ctx.tail_epsilon = eps;
  validate(ctx);
  return ctx;
}

}  // namespace qcalc
