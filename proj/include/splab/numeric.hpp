#pragma once

// Number types shared by the exact and extended-precision code paths:
//   BigInt    arbitrary precision integer (GMP)
//   Rational  exact rational (GMP)
//   BigFloat  binary floating point with a per-value mantissa width (MPFR)
//
// BigFloat values created from plain numbers take the calling thread's
// working precision, set with BigFloat::Scope. Arithmetic results carry the
// larger precision of their operands.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace splab {

using BigInt = mpz_class;
using Rational = mpq_class;

double to_double(const Rational& q);
double to_double(const BigInt& z);
// log2 of a positive big integer without overflow.
double log2_big(const BigInt& z);
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

class BigFloat {
 public:
  class Scope {
   public:
    explicit Scope(long bits);
    ~Scope();
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    long previous_;
  };

  static long working_precision();

  BigFloat();
  BigFloat(double x);  // NOLINT(google-explicit-constructor)
  BigFloat(int x);     // NOLINT(google-explicit-constructor)
  BigFloat(long x);    // NOLINT(google-explicit-constructor)
  BigFloat(const Rational& q);  // NOLINT(google-explicit-constructor)
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  long precision() const { return mpfr_get_prec(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  // log2 |x|; -infinity for zero.
  double log2_abs() const;
  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  std::string to_string(int digits = 30) const;

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);

  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
  friend BigFloat operator-(const BigFloat& a);

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

  friend BigFloat abs(const BigFloat& x);
  friend BigFloat exp(const BigFloat& x);
  friend BigFloat log(const BigFloat& x);
  friend BigFloat sqrt(const BigFloat& x);
  friend BigFloat pow(const BigFloat& x, const BigFloat& y);
  friend BigFloat pow(const BigFloat& x, long k);

  mpfr_ptr raw() { return value_; }
  mpfr_srcptr raw() const { return value_; }

 private:
  struct Uninit {};
  BigFloat(Uninit, long bits);
  mpfr_t value_;
};

// Generalized binomial a(a-1)...(a-k+1)/k! with real (or rational) upper argument.
template <class T>
T gen_binomial(const T& a, int k) {
  // Factors (a - k + i) / i: the partial products stay near the result
  // instead of passing through C(a, k / 2).
  T r(1);
  for (int i = 1; i <= k; ++i) {
    r *= (a - T(k - i));
    r /= T(i);
  }
  return r;
}
double gen_binomial(double a, int k);

// log2 |C(a, k)| computed term by term; -infinity when the coefficient vanishes.
double log2_abs_gen_binomial(double a, int k);
double log2_binomial(int n, int k);

// Sum of log2-magnitudes: log2(2^a + 2^b).
double log2_add(double a, double b);

inline double harmonic_double(int n, int m) {
  double s = 0.0;
  for (int j = n; j >= 1; --j) {
    double t = 1.0;
    for (int e = 0; e < m; ++e) t /= j;
    s += t;
  }
  return s;
}

}  // namespace splab
