#pragma once

#include <mpfr.h>

#include <string>

#include "carpetlab/rational.hpp"

namespace carpetlab {

/// High-precision real (value semantics over mpfr_t, round-to-nearest).
/// Results carry the larger precision of their operands; leaves are created
/// at an explicit bit count (default 256).
class Real {
 public:
  static constexpr long kDefaultPrecision = 256;

  explicit Real(long precision = kDefaultPrecision) { mpfr_init2(x_, precision); mpfr_set_zero(x_, 1); }
  Real(double v, long precision) {
    mpfr_init2(x_, precision);
    mpfr_set_d(x_, v, MPFR_RNDN);
  }
  Real(long v, long precision) {
    mpfr_init2(x_, precision);
    mpfr_set_si(x_, v, MPFR_RNDN);
  }
  Real(const BigInt& v, long precision) {
    mpfr_init2(x_, precision);
    mpfr_set_z(x_, v.raw(), MPFR_RNDN);
  }
  Real(const Rational& v, long precision) {
    mpfr_init2(x_, precision);
    mpfr_set_q(x_, v.raw(), MPFR_RNDN);
  }
  Real(const Real& o) {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_swap(x_, o.x_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(x_, mpfr_get_prec(o.x_));
      mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(x_, o.x_);
    return *this;
  }
  ~Real() { mpfr_clear(x_); }

  long precision() const { return mpfr_get_prec(x_); }

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  Real operator-() const;

  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) == 0; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) <= 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) > 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) >= 0; }

  Real abs() const;
  Real ln() const;   // pre: positive
  Real exp() const;
  Real pow(const Real& e) const;  // pre: positive base

  int sign() const { return mpfr_sgn(x_); }
  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

  /// Deterministic scientific-notation rendering with the given count of
  /// significant digits.
  std::string to_string(int significant_digits) const;

  const mpfr_t& raw() const { return x_; }
  mpfr_t& raw() { return x_; }

 private:
  mpfr_t x_;
};

/// Natural log of a small positive integer at the given precision.
Real ln_long(long v, long precision);

/// Rigorous enclosure [lo, hi] via directed rounding; just enough interval
/// machinery for transcendental separation certificates.
class Interval {
 public:
  Interval(const Real& lo, const Real& hi) : lo_(lo), hi_(hi) {}
  static Interval exact(const Rational& v, long precision);
  static Interval ln_of_long(long v, long precision);  // pre: v >= 1
  static Interval ln_of(const Rational& v, long precision);  // pre: v > 0

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval mul(const Interval& o) const;   // pre: both operands nonnegative-or-mixed handled
  Interval div(const Interval& o) const;   // pre: o strictly positive
  Interval exp() const;

  bool contains(const Rational& v) const;
  bool disjoint_from(const Interval& o) const;

 private:
  Real lo_, hi_;
};

}  // namespace carpetlab
