#include "qcalc/hpcomplex.hpp"

#include <cmath>

namespace qcalc {

HPComplex::HPComplex(HPReal re, HPReal im) : re_(std::move(re)), im_(std::move(im)) {
  // keep both components at a common precision
  if (re_.bits() < im_.bits()) re_ += HPReal(0L, im_.bits());
  if (im_.bits() < re_.bits()) im_ += HPReal(0L, re_.bits());
}

HPComplex::HPComplex(HPReal re) : re_(std::move(re)), im_(0L, re_.bits()) {}

HPComplex::HPComplex(long re, unsigned bits) : re_(re, bits), im_(0L, bits) {}

HPComplex::HPComplex(const Rational& re, unsigned bits) : re_(re, bits), im_(0L, bits) {}

HPComplex::HPComplex(const Rational& re, const Rational& im, unsigned bits)
    : re_(re, bits), im_(im, bits) {}

int HPComplex::precision_digits() const { return std::min(re_.digits10(), im_.digits10()); }

HPReal HPComplex::abs() const {
  if (im_.is_zero()) return re_.abs();
  if (re_.is_zero()) return im_.abs();
  return (re_ * re_ + im_ * im_).sqrt();
}

double HPComplex::magnitude() const { return std::hypot(re_.to_double(), im_.to_double()); }

HPComplex HPComplex::pow(long e) const {
  if (e < 0) return HPComplex(1L, bits()) / pow(-e);
  HPComplex result(1L, bits());
  HPComplex base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

std::string HPComplex::str(int digits) const {
  if (im_.is_zero()) return re_.str(digits);
  return re_.str(digits) + "," + im_.str(digits);
}

HPComplex& HPComplex::operator+=(const HPComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

HPComplex& HPComplex::operator-=(const HPComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

HPComplex& HPComplex::operator*=(const HPComplex& o) {
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    im_ *= o.re_;  // stays zero, picks up precision
    return *this;
  }
  HPReal re = re_ * o.re_ - im_ * o.im_;
  HPReal im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

HPComplex& HPComplex::operator/=(const HPComplex& o) {
  if (o.im_.is_zero()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  HPReal den = o.re_ * o.re_ + o.im_ * o.im_;
  HPReal re = (re_ * o.re_ + im_ * o.im_) / den;
  HPReal im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

HPComplex& HPComplex::operator*=(const HPReal& o) {
  re_ *= o;
  im_ *= o;
  return *this;
}

}  // namespace qcalc
