#include "splab/numeric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace splab {

namespace {
thread_local long tls_working_precision = 128;
}

double to_double(const Rational& q) { return q.get_d(); }
double to_double(const BigInt& z) { return z.get_d(); }

double log2_big(const BigInt& z) {
  if (sgn(z) <= 0) return -std::numeric_limits<double>::infinity();
  long exponent = 0;
  double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
  return std::log2(mantissa) + static_cast<double>(exponent);
}

std::string to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str() + "/1";
  return c.get_str();
}

Rational parse_rational(const std::string& text) {
  // Terminating decimals are exact too: "0.25" -> 25/100.
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    const std::string digits = whole + frac;
    const std::size_t first = (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) ? 1 : 0;
    const bool ok = digits.size() > first && frac.find_first_of("+-") == std::string::npos &&
                    digits.find_first_not_of("0123456789", first) == std::string::npos;
    if (!ok) throw std::invalid_argument("not a rational number: '" + text + "'");
    Rational q(BigInt(digits, 10), BigInt(1));
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    q /= scale;
    q.canonicalize();
    return q;
  }
  Rational q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

BigFloat::Scope::Scope(long bits) : previous_(tls_working_precision) {
  if (bits < MPFR_PREC_MIN) bits = MPFR_PREC_MIN;
  tls_working_precision = bits;
}
BigFloat::Scope::~Scope() { tls_working_precision = previous_; }

long BigFloat::working_precision() { return tls_working_precision; }

BigFloat::BigFloat(Uninit, long bits) { mpfr_init2(value_, bits); }

BigFloat::BigFloat() : BigFloat(Uninit{}, tls_working_precision) { mpfr_set_zero(value_, 1); }
BigFloat::BigFloat(double x) : BigFloat(Uninit{}, tls_working_precision) { mpfr_set_d(value_, x, MPFR_RNDN); }
BigFloat::BigFloat(int x) : BigFloat(Uninit{}, tls_working_precision) { mpfr_set_si(value_, x, MPFR_RNDN); }
BigFloat::BigFloat(long x) : BigFloat(Uninit{}, tls_working_precision) { mpfr_set_si(value_, x, MPFR_RNDN); }
BigFloat::BigFloat(const Rational& q) : BigFloat(Uninit{}, tls_working_precision) {
  mpfr_set_q(value_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) : BigFloat(Uninit{}, other.precision()) {
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    if (precision() < other.precision()) mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

double BigFloat::log2_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  long exponent = 0;
  double mantissa = mpfr_get_d_2exp(&exponent, value_, MPFR_RNDN);
  return std::log2(std::fabs(mantissa)) + static_cast<double>(exponent);
}

std::string BigFloat::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, value_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

namespace {
// Widen the destination so results keep the larger operand precision.
void widen(mpfr_ptr dst, mpfr_srcptr src) {
  if (mpfr_get_prec(dst) < mpfr_get_prec(src)) mpfr_prec_round(dst, mpfr_get_prec(src), MPFR_RNDN);
}
}  // namespace

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  widen(value_, o.value_);
  mpfr_add(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator-=(const BigFloat& o) {
  widen(value_, o.value_);
  mpfr_sub(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator*=(const BigFloat& o) {
  widen(value_, o.value_);
  mpfr_mul(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator/=(const BigFloat& o) {
  widen(value_, o.value_);
  mpfr_div(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

BigFloat operator-(const BigFloat& a) {
  BigFloat r(a);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

BigFloat abs(const BigFloat& x) {
  BigFloat r(x);
  mpfr_abs(r.value_, r.value_, MPFR_RNDN);
  return r;
}
BigFloat exp(const BigFloat& x) {
  BigFloat r(x);
  mpfr_exp(r.value_, x.value_, MPFR_RNDN);
  return r;
}
BigFloat log(const BigFloat& x) {
  BigFloat r(x);
  mpfr_log(r.value_, x.value_, MPFR_RNDN);
  return r;
}
BigFloat sqrt(const BigFloat& x) {
  BigFloat r(x);
  mpfr_sqrt(r.value_, x.value_, MPFR_RNDN);
  return r;
}
BigFloat pow(const BigFloat& x, const BigFloat& y) {
  BigFloat r(x);
  widen(r.value_, y.value_);
  mpfr_pow(r.value_, x.value_, y.value_, MPFR_RNDN);
  return r;
}
BigFloat pow(const BigFloat& x, long k) {
  BigFloat r(x);
  mpfr_pow_si(r.value_, x.value_, k, MPFR_RNDN);
  return r;
}

double gen_binomial(double a, int k) { return gen_binomial<double>(a, k); }

double log2_abs_gen_binomial(double a, int k) {
  double s = 0.0;
  for (int i = 0; i < k; ++i) {
    double f = std::fabs(a - i);
    if (f == 0.0) return -std::numeric_limits<double>::infinity();
    s += std::log2(f) - std::log2(static_cast<double>(i + 1));
  }
  return s;
}

double log2_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) / std::log(2.0);
}

double log2_add(double a, double b) {
  if (std::isinf(a) && a < 0) return b;
  if (std::isinf(b) && b < 0) return a;
  double hi = std::max(a, b);
  double lo = std::min(a, b);
  return hi + std::log2(1.0 + std::exp2(lo - hi));
}

}  // namespace splab
