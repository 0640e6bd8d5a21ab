#include "qcalc/rational.hpp"

#include <cctype>

#include "qcalc/error.hpp"

namespace qcalc {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw QError(ErrorCode::ZeroDenominator, "rational with zero denominator");
  v_ = mpq_class(num, 1);
  v_ /= den;
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  mpq_class value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw QError(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
    mpz_class n{std::string(num)}, d{std::string(den)};
    if (d == 0) throw QError(ErrorCode::ZeroDenominator, "rational with zero denominator");
    value = mpq_class(n, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
      throw QError(ErrorCode::ParseError, "bad decimal '" + std::string(text) + "'");
    mpz_class n{std::string(whole.empty() ? "0" : whole) + std::string(frac)};
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, frac.size());
    value = mpq_class(n, d);
  } else {
    if (!all_digits(s)) throw QError(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
    value = mpq_class(mpz_class{std::string(s)});
  }
  value.canonicalize();
  if (negative) value = -value;
  return Rational(value);
}

std::string Rational::str() const { return v_.get_str(); }

Rational Rational::pow(long e) const {
  if (e < 0) {
    if (is_zero()) throw QError(ErrorCode::ZeroDenominator, "negative power of zero");
    return Rational(1) / pow(-e);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(mpq_class(n, d));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw QError(ErrorCode::ZeroDenominator, "division by zero rational");
  v_ /= o.v_;
  return *this;
}

}  // namespace qcalc
