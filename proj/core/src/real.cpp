#include "carpetlab/real.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "carpetlab/errors.hpp"

namespace carpetlab {

namespace {
long join_prec(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

Real operator+(const Real& a, const Real& b) {
  Real r(join_prec(a, b));
  mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(join_prec(a, b));
  mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(join_prec(a, b));
  mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(join_prec(a, b));
  mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.raw(), x_, MPFR_RNDN);
  return r;
}

Real Real::abs() const {
  Real r(precision());
  mpfr_abs(r.raw(), x_, MPFR_RNDN);
  return r;
}

Real Real::ln() const {
  if (sign() <= 0) throw Error(Errc::ParseError, "ln of a non-positive value");
  Real r(precision());
  mpfr_log(r.raw(), x_, MPFR_RNDN);
  return r;
}

Real Real::exp() const {
  Real r(precision());
  mpfr_exp(r.raw(), x_, MPFR_RNDN);
  return r;
}

Real Real::pow(const Real& e) const {
  if (sign() <= 0) throw Error(Errc::ParseError, "pow needs a positive base");
  Real r(join_prec(*this, e));
  mpfr_pow(r.raw(), x_, e.raw(), MPFR_RNDN);
  return r;
}

std::string Real::to_string(int significant_digits) const {
  std::vector<char> buf(static_cast<size_t>(significant_digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", significant_digits - 1, x_);
  return buf.data();
}

Real ln_long(long v, long precision) {
  return Real(v, precision).ln();
}

Interval Interval::exact(const Rational& v, long precision) {
  Real lo(precision), hi(precision);
  mpfr_set_q(lo.raw(), v.raw(), MPFR_RNDD);
  mpfr_set_q(hi.raw(), v.raw(), MPFR_RNDU);
  return Interval(lo, hi);
}

Interval Interval::ln_of_long(long v, long precision) {
  Real lo(precision), hi(precision);
  mpfr_set_si(lo.raw(), v, MPFR_RNDN);
  mpfr_log(lo.raw(), lo.raw(), MPFR_RNDD);
  mpfr_set_si(hi.raw(), v, MPFR_RNDN);
  mpfr_log(hi.raw(), hi.raw(), MPFR_RNDU);
  return Interval(lo, hi);
}

Interval Interval::ln_of(const Rational& v, long precision) {
  if (v.sign() <= 0) throw Error(Errc::ParseError, "ln of a non-positive rational");
  Real vlo(precision), vhi(precision);
  mpfr_set_q(vlo.raw(), v.raw(), MPFR_RNDD);
  mpfr_set_q(vhi.raw(), v.raw(), MPFR_RNDU);
  Real lo(precision), hi(precision);
  mpfr_log(lo.raw(), vlo.raw(), MPFR_RNDD);
  mpfr_log(hi.raw(), vhi.raw(), MPFR_RNDU);
  return Interval(lo, hi);
}

Interval Interval::operator+(const Interval& o) const {
  Real lo(std::max(lo_.precision(), o.lo_.precision()));
  Real hi(lo.precision());
  mpfr_add(lo.raw(), lo_.raw(), o.lo_.raw(), MPFR_RNDD);
  mpfr_add(hi.raw(), hi_.raw(), o.hi_.raw(), MPFR_RNDU);
  return Interval(lo, hi);
}

Interval Interval::operator-(const Interval& o) const {
  Real lo(std::max(lo_.precision(), o.lo_.precision()));
  Real hi(lo.precision());
  mpfr_sub(lo.raw(), lo_.raw(), o.hi_.raw(), MPFR_RNDD);
  mpfr_sub(hi.raw(), hi_.raw(), o.lo_.raw(), MPFR_RNDU);
  return Interval(lo, hi);
}

Interval Interval::mul(const Interval& o) const {
  const long prec = std::max(lo_.precision(), o.lo_.precision());
  // all four corner products with directed rounding
  Real cand[8] = {Real(prec), Real(prec), Real(prec), Real(prec),
                  Real(prec), Real(prec), Real(prec), Real(prec)};
  const mpfr_srcptr a[2] = {lo_.raw(), hi_.raw()};
  const mpfr_srcptr b[2] = {o.lo_.raw(), o.hi_.raw()};
  int idx = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      mpfr_mul(cand[idx].raw(), a[i], b[j], MPFR_RNDD);
      mpfr_mul(cand[idx + 4].raw(), a[i], b[j], MPFR_RNDU);
      ++idx;
    }
  Real lo = cand[0], hi = cand[4];
  for (int i = 1; i < 4; ++i) {
    if (cand[i] < lo) lo = cand[i];
    if (cand[i + 4] > hi) hi = cand[i + 4];
  }
  return Interval(lo, hi);
}

Interval Interval::div(const Interval& o) const {
  if (o.lo_.sign() <= 0) throw Error(Errc::ParseError, "interval division needs a positive divisor");
  const long prec = std::max(lo_.precision(), o.lo_.precision());
  Real cand[8] = {Real(prec), Real(prec), Real(prec), Real(prec),
                  Real(prec), Real(prec), Real(prec), Real(prec)};
  const mpfr_srcptr a[2] = {lo_.raw(), hi_.raw()};
  const mpfr_srcptr b[2] = {o.lo_.raw(), o.hi_.raw()};
  int idx = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      mpfr_div(cand[idx].raw(), a[i], b[j], MPFR_RNDD);
      mpfr_div(cand[idx + 4].raw(), a[i], b[j], MPFR_RNDU);
      ++idx;
    }
  Real lo = cand[0], hi = cand[4];
  for (int i = 1; i < 4; ++i) {
    if (cand[i] < lo) lo = cand[i];
    if (cand[i + 4] > hi) hi = cand[i + 4];
  }
  return Interval(lo, hi);
}

Interval Interval::exp() const {
  Real lo(lo_.precision()), hi(hi_.precision());
  mpfr_exp(lo.raw(), lo_.raw(), MPFR_RNDD);
  mpfr_exp(hi.raw(), hi_.raw(), MPFR_RNDU);
  return Interval(lo, hi);
}

bool Interval::contains(const Rational& v) const {
  Real vlo(lo_.precision()), vhi(lo_.precision());
  mpfr_set_q(vlo.raw(), v.raw(), MPFR_RNDD);
  mpfr_set_q(vhi.raw(), v.raw(), MPFR_RNDU);
  return !(vhi < lo_) && !(vlo > hi_);
}

bool Interval::disjoint_from(const Interval& o) const {
  return hi_ < o.lo_ || o.hi_ < lo_;
}

}  // namespace carpetlab
