#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hardcore {

using Rational = mpq_class;
using BigInt = mpz_class;

// Parses "p/q" or an integer; rejects decimals. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
Rational pow(const Rational& base, long exponent);
BigInt binomial(long n, long k);
BigInt ceil(const Rational& x);
std::string to_string(const Rational& x);
double to_double(const Rational& x);

// Activity λ: exact, non-negative.
class Activity {
 public:
  explicit Activity(Rational value);
  static Activity parse(std::string_view text) { return Activity(parse_rational(text)); }
  const Rational& value() const { return value_; }
  double approx() const { return to_double(value_); }

 private:
  Rational value_;
};

}  // namespace hardcore
