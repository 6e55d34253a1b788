#pragma once

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace carpetlab {

/// Arbitrary-precision signed integer (value semantics over mpz_t).
class BigInt {
 public:
  BigInt() { mpz_init(z_); }
  BigInt(long v) { mpz_init_set_si(z_, v); }  // NOLINT: implicit by design
  explicit BigInt(const std::string& decimal);
  BigInt(const BigInt& o) { mpz_init_set(z_, o.z_); }
  BigInt(BigInt&& o) noexcept {
    mpz_init(z_);
    mpz_swap(z_, o.z_);
  }
  BigInt& operator=(const BigInt& o) {
    if (this != &o) mpz_set(z_, o.z_);
    return *this;
  }
  BigInt& operator=(BigInt&& o) noexcept {
    mpz_swap(z_, o.z_);
    return *this;
  }
  ~BigInt() { mpz_clear(z_); }

  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);
  /// Truncated quotient; remainder must be checked separately when it matters.
  friend BigInt operator/(const BigInt& a, const BigInt& b);
  friend BigInt operator%(const BigInt& a, const BigInt& b);
  BigInt operator-() const;
  BigInt& operator+=(const BigInt& o);
  BigInt& operator-=(const BigInt& o);
  BigInt& operator*=(const BigInt& o);

  friend bool operator==(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) == 0; }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) < 0; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) <= 0; }
  friend bool operator>(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) > 0; }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) >= 0; }

  int sign() const { return mpz_sgn(z_); }
  bool is_zero() const { return mpz_sgn(z_) == 0; }
  bool is_one() const { return mpz_cmp_ui(z_, 1) == 0; }
  bool fits_long() const { return mpz_fits_slong_p(z_) != 0; }
  long to_long() const { return mpz_get_si(z_); }
  size_t bit_length() const { return mpz_sizeinbase(z_, 2); }

  BigInt abs() const;
  static BigInt pow(const BigInt& base, unsigned long e);
  static BigInt pow(unsigned long base, unsigned long e);
  static BigInt gcd(const BigInt& a, const BigInt& b);

  std::string to_string() const;

  const mpz_t& raw() const { return z_; }
  mpz_t& raw() { return z_; }

 private:
  mpz_t z_;
};

std::ostream& operator<<(std::ostream& os, const BigInt& v);

/// Floor of the e-th root, by Newton iteration on integers; the result r is
/// verified to satisfy r^e <= x < (r+1)^e before returning.
/// pre: x >= 0, e >= 1.
BigInt integer_kth_root(const BigInt& x, unsigned long e);

/// The exact e-th root when x is a perfect e-th power, nullopt otherwise.
std::optional<BigInt> exact_kth_root(const BigInt& x, unsigned long e);

/// Miller-Rabin backed primality check (exact for anything reachable here).
bool is_prime(const BigInt& p);

/// Multiplicity of the prime p in v. pre: v != 0, p prime.
long prime_multiplicity(const BigInt& v, const BigInt& p);

/// Trial-division factorization, exponents keyed by prime. pre: 1 <= v fits in uint64.
std::vector<std::pair<std::uint64_t, long>> factorize_u64(std::uint64_t v);

/// Exact rational in canonical reduced form, denominator > 0, zero is 0/1.
class Rational {
 public:
  Rational() { mpq_init(q_); }
  Rational(long v) {  // NOLINT: implicit by design
    mpq_init(q_);
    mpq_set_si(q_, v, 1);
  }
  Rational(const BigInt& num, const BigInt& den);
  Rational(long num, long den);
  Rational(const Rational& o) {
    mpq_init(q_);
    mpq_set(q_, o.q_);
  }
  Rational(Rational&& o) noexcept {
    mpq_init(q_);
    mpq_swap(q_, o.q_);
  }
  Rational& operator=(const Rational& o) {
    if (this != &o) mpq_set(q_, o.q_);
    return *this;
  }
  Rational& operator=(Rational&& o) noexcept {
    mpq_swap(q_, o.q_);
    return *this;
  }
  ~Rational() { mpq_clear(q_); }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);  // pre: b != 0
  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator*=(const Rational& o);

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) != 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

  int sign() const { return mpq_sgn(q_); }
  bool is_zero() const { return mpq_sgn(q_) == 0; }
  bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

  BigInt numerator() const;
  BigInt denominator() const;

  /// x^e with integer e of either sign. pre: x != 0 when e < 0.
  static Rational pow(const Rational& x, long e);

  Rational inverse() const;  // pre: nonzero

  /// Canonical "num/den" rendering (denominator always present, e.g. "1/1").
  std::string to_string() const;

  const mpq_t& raw() const { return q_; }

 private:
  mpq_t q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& v);

/// p-adic valuation v_p(x) = v_p(num) - v_p(den).
/// errors: ZeroValuation when x == 0, NotPrime when p is not prime.
long vp(const Rational& x, const BigInt& p);

/// |x|_p = p^{-v_p(x)} as an exact rational.
Rational p_adic_abs(const Rational& x, const BigInt& p);

}  // namespace carpetlab
