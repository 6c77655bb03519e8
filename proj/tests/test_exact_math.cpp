#include "doctest.h"

#include "dundee/errors.hpp"
#include "dundee/exact_math.hpp"

using namespace dundee;

namespace {

Rational parse_decimal(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(BigInt(text, 10));
  const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
  return make_rational(BigInt(digits, 10), den);
}

}  // namespace

TEST_CASE("binomial") {
  CHECK(binomial(8, 4) == 70);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(3, -1) == 0);
  CHECK(binomial(52, 4) == 270725);
  CHECK_THROWS_AS(binomial(-1, 0), DomainError);
}

TEST_CASE("binomial symmetry and Pascal's rule") {
  for (long n = 0; n <= 40; ++n) {
    for (long k = 0; k <= n; ++k) {
      CHECK(binomial(n, k) == binomial(n, n - k));
      if (n > 0 && k > 0) CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
  }
}

TEST_CASE("falling factorial") {
  CHECK(falling_factorial(4, 1) == 24);
  CHECK(falling_factorial(3, 3) == 1);
  CHECK(falling_factorial(2, 0) == 2);
  CHECK(falling_factorial(2, 5) == 1);
  for (long a = 0; a <= 25; ++a) {
    for (long b = 0; b <= a; ++b) CHECK(falling_factorial(a, b) * factorial(b) == factorial(a));
  }
}

TEST_CASE("truncated decimals") {
  CHECK(to_decimal_truncated(make_rational(1, 70), 4) == "0.0142");
  CHECK(to_decimal_truncated(make_rational(1, 3), 4) == "0.3333");
  CHECK(to_decimal_truncated(make_rational(1, 2), 4) == "0.5000");
  CHECK(to_decimal_truncated(make_rational(2, 3), 4) == "0.6666");
  CHECK(to_decimal_truncated(Rational(1), 3) == "1.000");
  CHECK(to_decimal_truncated(Rational(0), 2) == "0.00");
  CHECK(to_decimal_truncated(make_rational(7, 2), 0) == "3");
}

TEST_CASE("truncation never exceeds the value and loses less than one unit") {
  for (int den = 1; den <= 60; ++den) {
    for (int num = 0; num <= den; ++num) {
      const Rational p = make_rational(num, den);
      for (int d : {0, 1, 3, 6}) {
        const Rational shown = parse_decimal(to_decimal_truncated(p, d));
        CHECK(shown <= p);
        mpz_class unit;
        mpz_ui_pow_ui(unit.get_mpz_t(), 10, static_cast<unsigned long>(d));
        CHECK(p - shown < Rational(1) / Rational(unit));
      }
    }
  }
}

TEST_CASE("fractions and JSON") {
  const Rational p = make_rational(6, 8);
  CHECK(p == make_rational(3, 4));
  CHECK(to_fraction_string(p) == "3/4");
  CHECK(to_fraction_string(Rational(0)) == "0");
  const auto j = to_json(p, 4);
  CHECK(j["num"] == "3");
  CHECK(j["den"] == "4");
  CHECK(j["decimal"] == "0.7500");
  CHECK(rational_from_json(j) == p);
  CHECK_THROWS(make_rational(1, 0));
}

TEST_CASE("rationals from JSON are read in base 10") {
  CHECK(rational_from_json(nlohmann::json{{"num", "010"}, {"den", "4"}}) == make_rational(5, 2));
  CHECK_THROWS_AS(rational_from_json(nlohmann::json{{"num", "1.5"}, {"den", "2"}}), NotationError);
  CHECK_THROWS_AS(rational_from_json(nlohmann::json{{"num", "1"}}), NotationError);
  CHECK_THROWS_AS(rational_from_json(nlohmann::json{{"num", "1"}, {"den", "0"}}), DomainError);
}
