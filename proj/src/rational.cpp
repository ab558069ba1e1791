#include "hardcore/rational.hpp"

#include <stdexcept>

namespace hardcore {

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("rational: empty string");
  for (char c : text) {
    const bool ok = (c >= '0' && c <= '9') || c == '/' || c == '-' || c == '+';
    if (!ok) throw std::invalid_argument("rational: expected p/q or integer, got '" + std::string(text) + "'");
  }
  Rational r;
  if (r.set_str(std::string(text), 10) != 0) throw std::invalid_argument("rational: cannot parse '" + std::string(text) + "'");
  if (r.get_den() == 0) throw std::invalid_argument("rational: zero denominator");
  r.canonicalize();
  return r;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("pow: zero to a negative power");
    Rational inv = 1 / base;
    return pow(inv, -exponent);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt ceil(const Rational& x) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

double to_double(const Rational& x) { return x.get_d(); }

Activity::Activity(Rational value) : value_(std::move(value)) {
  if (value_ < 0) throw std::invalid_argument("Activity: lambda must be non-negative");
}

}  // namespace hardcore
