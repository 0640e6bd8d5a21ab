#include "qcalc/hpreal.hpp"

#include <cmath>
#include <memory>

#include "qcalc/error.hpp"

namespace qcalc {

namespace {
constexpr unsigned kGuardBits = 24;
constexpr double kLog2of10 = 3.32192809488736234787;
}  // namespace

unsigned bits_for_digits(int digits) {
  return static_cast<unsigned>(std::ceil(digits * kLog2of10)) + kGuardBits;
}

HPReal::HPReal() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }

HPReal::HPReal(long v, unsigned bits) { mpfr_init2(v_, bits); mpfr_set_si(v_, v, MPFR_RNDN); }

HPReal::HPReal(const Rational& v, unsigned bits) {
  mpfr_init2(v_, bits);
  mpfr_set_q(v_, v.raw().get_mpq_t(), MPFR_RNDN);
}

HPReal::HPReal(double v, unsigned bits) { mpfr_init2(v_, bits); mpfr_set_d(v_, v, MPFR_RNDN); }

HPReal::HPReal(const HPReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }

HPReal::HPReal(HPReal&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

HPReal& HPReal::operator=(const HPReal& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

HPReal& HPReal::operator=(HPReal&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

HPReal::~HPReal() { mpfr_clear(v_); }

HPReal HPReal::parse(const std::string& text, unsigned bits) {
  HPReal r(0L, bits);
  if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0)
    throw QError(ErrorCode::ParseError, "bad real '" + text + "'");
  return r;
}

int HPReal::digits10() const {
  return static_cast<int>((static_cast<double>(bits()) - kGuardBits) / kLog2of10);
}

std::string HPReal::str(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits > 1 ? digits - 1 : 0, v_);
  std::unique_ptr<char, decltype(&mpfr_free_str)> guard(buf, &mpfr_free_str);
  return std::string(buf);
}

HPReal HPReal::abs() const {
  HPReal r(*this);
  mpfr_abs(r.v_, r.v_, MPFR_RNDN);
  return r;
}

HPReal HPReal::sqrt() const {
  HPReal r(*this);
  mpfr_sqrt(r.v_, r.v_, MPFR_RNDN);
  return r;
}

HPReal HPReal::pow(long e) const {
  HPReal r(*this);
  mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
  return r;
}

HPReal HPReal::operator-() const {
  HPReal r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

void HPReal::raise_precision(unsigned b) {
  if (b > bits()) mpfr_prec_round(v_, b, MPFR_RNDN);
}

HPReal& HPReal::operator+=(const HPReal& o) {
  raise_precision(o.bits());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

HPReal& HPReal::operator-=(const HPReal& o) {
  raise_precision(o.bits());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

HPReal& HPReal::operator*=(const HPReal& o) {
  raise_precision(o.bits());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

HPReal& HPReal::operator/=(const HPReal& o) {
  raise_precision(o.bits());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

HPReal& HPReal::operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
HPReal& HPReal::operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
HPReal& HPReal::operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
HPReal& HPReal::operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

HPReal operator-(long a, const HPReal& b) {
  HPReal r(b);
  mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const HPReal& a, const HPReal& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

}  // namespace qcalc
