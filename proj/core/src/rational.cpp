#include "carpetlab/rational.hpp"

#include <ostream>

#include "carpetlab/errors.hpp"

namespace carpetlab {

BigInt::BigInt(const std::string& decimal) {
  if (mpz_init_set_str(z_, decimal.c_str(), 10) != 0) {
    mpz_clear(z_);
    throw Error(Errc::ParseError, "not a decimal integer: " + decimal);
  }
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_add(r.z_, a.z_, b.z_);
  return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_sub(r.z_, a.z_, b.z_);
  return r;
}

BigInt operator*(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_mul(r.z_, a.z_, b.z_);
  return r;
}

BigInt operator/(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_tdiv_q(r.z_, a.z_, b.z_);
  return r;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_tdiv_r(r.z_, a.z_, b.z_);
  return r;
}

BigInt BigInt::operator-() const {
  BigInt r;
  mpz_neg(r.z_, z_);
  return r;
}

BigInt& BigInt::operator+=(const BigInt& o) {
  mpz_add(z_, z_, o.z_);
  return *this;
}

BigInt& BigInt::operator-=(const BigInt& o) {
  mpz_sub(z_, z_, o.z_);
  return *this;
}

BigInt& BigInt::operator*=(const BigInt& o) {
  mpz_mul(z_, z_, o.z_);
  return *this;
}

BigInt BigInt::abs() const {
  BigInt r;
  mpz_abs(r.z_, z_);
  return r;
}

BigInt BigInt::pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.z_, base.z_, e);
  return r;
}

BigInt BigInt::pow(unsigned long base, unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.z_, base, e);
  return r;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.z_, a.z_, b.z_);
  return r;
}

std::string BigInt::to_string() const {
  char* s = mpz_get_str(nullptr, 10, z_);
  std::string out(s);
  void (*freefn)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefn);
  freefn(s, out.size() + 1);
  return out;
}

std::ostream& operator<<(std::ostream& os, const BigInt& v) { return os << v.to_string(); }

BigInt integer_kth_root(const BigInt& x, unsigned long e) {
  if (x.sign() < 0 || e == 0) throw Error(Errc::ParseError, "integer_kth_root needs x >= 0, e >= 1");
  if (x.is_zero() || x.is_one() || e == 1) return x;

  // Newton iteration r <- ((e-1)r + x/r^{e-1})/e from an over-estimate.
  BigInt r = BigInt::pow(2UL, (x.bit_length() + e - 1) / e);
  const BigInt ee(static_cast<long>(e));
  const BigInt em1(static_cast<long>(e - 1));
  while (true) {
    BigInt rpow = BigInt::pow(r, e - 1);
    BigInt next = (em1 * r + x / rpow) / ee;
    if (next >= r) break;
    r = next;
  }
  // Verification multiply: enforce r^e <= x < (r+1)^e exactly.
  while (BigInt::pow(r, e) > x) r -= 1;
  while (BigInt::pow(r + 1, e) <= x) r += 1;
  return r;
}

std::optional<BigInt> exact_kth_root(const BigInt& x, unsigned long e) {
  BigInt r = integer_kth_root(x, e);
  if (BigInt::pow(r, e) == x) return r;
  return std::nullopt;
}

bool is_prime(const BigInt& p) {
  return mpz_probab_prime_p(p.raw(), 40) > 0;
}

long prime_multiplicity(const BigInt& v, const BigInt& p) {
  BigInt tmp;
  return static_cast<long>(mpz_remove(tmp.raw(), v.raw(), p.raw()));
}

std::vector<std::pair<std::uint64_t, long>> factorize_u64(std::uint64_t v) {
  std::vector<std::pair<std::uint64_t, long>> out;
  for (std::uint64_t p = 2; p * p <= v; p += (p == 2 ? 1 : 2)) {
    if (v % p == 0) {
      long e = 0;
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (v > 1) out.emplace_back(v, 1);
  return out;
}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den.is_zero()) throw Error(Errc::ParseError, "rational with zero denominator");
  mpq_init(q_);
  mpz_set(mpq_numref(q_), num.raw());
  mpz_set(mpq_denref(q_), den.raw());
  mpq_canonicalize(q_);
}

Rational::Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

Rational operator+(const Rational& a, const Rational& b) {
  Rational r;
  mpq_add(r.q_, a.q_, b.q_);
  return r;
}

Rational operator-(const Rational& a, const Rational& b) {
  Rational r;
  mpq_sub(r.q_, a.q_, b.q_);
  return r;
}

Rational operator*(const Rational& a, const Rational& b) {
  Rational r;
  mpq_mul(r.q_, a.q_, b.q_);
  return r;
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw Error(Errc::ParseError, "rational division by zero");
  Rational r;
  mpq_div(r.q_, a.q_, b.q_);
  return r;
}

Rational Rational::operator-() const {
  Rational r;
  mpq_neg(r.q_, q_);
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  mpq_add(q_, q_, o.q_);
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  mpq_mul(q_, q_, o.q_);
  return *this;
}

BigInt Rational::numerator() const {
  BigInt r;
  mpz_set(r.raw(), mpq_numref(q_));
  return r;
}

BigInt Rational::denominator() const {
  BigInt r;
  mpz_set(r.raw(), mpq_denref(q_));
  return r;
}

Rational Rational::pow(const Rational& x, long e) {
  if (e == 0) return Rational(1);
  if (x.is_zero() && e < 0) throw Error(Errc::ParseError, "0 to a negative power");
  const unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
  Rational r;
  mpz_pow_ui(mpq_numref(r.q_), mpq_numref(x.q_), mag);
  mpz_pow_ui(mpq_denref(r.q_), mpq_denref(x.q_), mag);
  if (e < 0) mpq_inv(r.q_, r.q_);
  return r;  // powers of a canonical form stay canonical
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(Errc::ParseError, "inverse of zero");
  Rational r;
  mpq_inv(r.q_, q_);
  return r;
}

std::string Rational::to_string() const {
  return numerator().to_string() + "/" + denominator().to_string();
}

std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.to_string(); }

long vp(const Rational& x, const BigInt& p) {
  if (x.is_zero()) throw Error(Errc::ZeroValuation, "v_p(0) is undefined");
  if (p < BigInt(2) || !is_prime(p)) throw Error(Errc::NotPrime, p.to_string() + " is not prime");
  return prime_multiplicity(x.numerator(), p) - prime_multiplicity(x.denominator(), p);
}

Rational p_adic_abs(const Rational& x, const BigInt& p) {
  const long v = vp(x, p);
  const BigInt mag = BigInt::pow(p, static_cast<unsigned long>(v < 0 ? -v : v));
  return v >= 0 ? Rational(BigInt(1), mag) : Rational(mag, BigInt(1));
}

}  // namespace carpetlab
