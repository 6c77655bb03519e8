#include "dundee/exact_math.hpp"

#include "dundee/errors.hpp"

namespace dundee {

BigInt binomial(long n, long k) {
  if (n < 0) throw DomainError("binomial: n must be non-negative");
  if (k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

BigInt falling_factorial(long a, long b) {
  BigInt r = 1;
  for (long x = a; x > b; --x) r *= x;
  return r;
}

BigInt factorial(long n) {
  if (n < 0) throw DomainError("factorial: n must be non-negative");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

std::string to_decimal_truncated(const Rational& p, int digits) {
  if (digits < 0) throw DomainError("to_decimal_truncated: digits must be non-negative");
  const bool negative = sgn(p) < 0;
  BigInt num = abs(p.get_num());
  const BigInt& den = p.get_den();

  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  BigInt scaled = num * scale;
  mpz_tdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());

  BigInt whole, frac;
  mpz_tdiv_qr(whole.get_mpz_t(), frac.get_mpz_t(), scaled.get_mpz_t(),
              scale.get_mpz_t());
  std::string frac_str = digits > 0 ? frac.get_str() : "";
  frac_str.insert(0, static_cast<std::size_t>(digits) - frac_str.size(), '0');

  std::string out = negative && (whole != 0 || frac != 0) ? "-" : "";
  out += whole.get_str();
  if (digits > 0) out += '.' + frac_str;
  return out;
}

std::string to_fraction_string(const Rational& p) {
  if (p.get_den() == 1) return p.get_num().get_str();
  return p.get_num().get_str() + "/" + p.get_den().get_str();
}

nlohmann::json to_json(const Rational& p, int digits) {
  return {{"num", p.get_num().get_str()},
          {"den", p.get_den().get_str()},
          {"decimal", to_decimal_truncated(p, digits)}};
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational rational_from_json(const nlohmann::json& j) {
  try {
    return make_rational(BigInt(j.at("num").get<std::string>(), 10),
                         BigInt(j.at("den").get<std::string>(), 10));
  } catch (const std::invalid_argument&) {
    throw NotationError("malformed rational in JSON");
  } catch (const nlohmann::json::exception&) {
    throw NotationError("malformed rational in JSON");
  }
}

}  // namespace dundee
