#pragma once

#include <gmpxx.h>

#include <string>

#include "json.hpp"

namespace dundee {

using BigInt = mpz_class;

/// Exact rational number. gmpxx keeps every arithmetic result in lowest
/// terms, so equality is structural.
using Rational = mpq_class;

/// A probability produced by one of the engines.
using ExactProb = Rational;

/// Number of decimal places used when a caller does not ask for a width.
inline constexpr int kDefaultDigits = 10;

/// C(n, k); zero when k < 0 or k > n.
BigInt binomial(long n, long k);

/// a (a-1) ... (b+1); the empty product 1 when a <= b.
BigInt falling_factorial(long a, long b);

BigInt factorial(long n);

/// Decimal expansion truncated toward zero after `digits` places.
/// Never rounds, so the rendered value never exceeds `p` for p >= 0.
std::string to_decimal_truncated(const Rational& p, int digits);

/// "num/den", or just "num" when the denominator is 1.
std::string to_fraction_string(const Rational& p);

/// {"num": "...", "den": "...", "decimal": "..."}
nlohmann::json to_json(const Rational& p, int digits = kDefaultDigits);

/// Inverse of to_json; accepts the "num"/"den" fields only.
Rational rational_from_json(const nlohmann::json& j);

Rational make_rational(const BigInt& num, const BigInt& den);

}  // namespace dundee
