#include "cubesaw/numeric.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "cubesaw/errors.hpp"

namespace cubesaw {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw DomainError("malformed integer: '" + std::string(s) + "'");
  BigInt z(std::string(s), 10);
  return negative ? BigInt(-z) : z;
}

BigInt pow10(unsigned e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw DomainError("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash));
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    exponent = parse_integer(text.substr(e + 1)).get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long scale = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view whole = mantissa.substr(0, dot);
    std::string_view frac = mantissa.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw DomainError("malformed number: '" + std::string(text) + "'");
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) {
      throw DomainError("malformed number: '" + std::string(text) + "'");
    }
    digits = std::string(whole) + std::string(frac);
    scale = static_cast<long>(frac.size());
  } else {
    if (!all_digits(mantissa)) throw DomainError("malformed number: '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }
  if (digits.empty()) digits = "0";
  scale -= exponent;
  Rational q(BigInt(digits, 10));
  if (scale > 0) {
    q /= Rational(pow10(static_cast<unsigned>(scale)));
  } else if (scale < 0) {
    q *= Rational(pow10(static_cast<unsigned>(-scale)));
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str(10);
}

std::string to_string(const BigInt& z) { return z.get_str(10); }

long double to_long_double(const BigInt& z) {
  if (z.fits_slong_p()) return static_cast<long double>(z.get_si());
  return std::strtold(z.get_str(10).c_str(), nullptr);
}

long double to_long_double(const Rational& q) {
  const BigInt& num = q.get_num();
  const BigInt& den = q.get_den();
  if (num.fits_slong_p() && den.fits_slong_p()) {
    return static_cast<long double>(num.get_si()) / static_cast<long double>(den.get_si());
  }
  // Scale to keep ~64 significant bits in the quotient.
  const long nbits = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
  const long dbits = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  const long shift = 80 - (nbits - dbits);
  BigInt scaled = num;
  if (shift > 0) {
    mpz_mul_2exp(scaled.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  } else if (shift < 0) {
    mpz_tdiv_q_2exp(scaled.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
  }
  BigInt quotient = scaled / den;
  return std::ldexp(to_long_double(quotient), static_cast<int>(-shift));
}

Rational floor_rational(long double x, std::uint64_t denominator) {
  const long double scaled = std::floor(x * static_cast<long double>(denominator));
  Rational q(BigInt(std::to_string(static_cast<long long>(scaled)), 10), BigInt(std::to_string(denominator), 10));
  q.canonicalize();
  return q;
}

BigInt binomial(unsigned n, unsigned k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt falling_factorial(const BigInt& n, unsigned k) {
  BigInt r = 1;
  for (unsigned j = 0; j < k; ++j) r *= BigInt(n - j);
  return r;
}

Rational evaluate(std::span<const BigInt> coeffs, const Rational& x) {
  return horner<Rational>(coeffs, x, [](const BigInt& c) { return Rational(c); });
}

long double evaluate(std::span<const BigInt> coeffs, long double x) {
  return horner<long double>(coeffs, x, [](const BigInt& c) { return to_long_double(c); });
}

std::vector<BigInt> derivative(std::span<const BigInt> coeffs) {
  std::vector<BigInt> d;
  for (std::size_t n = 1; n < coeffs.size(); ++n) d.push_back(coeffs[n] * static_cast<unsigned long>(n));
  return d;
}

}  // namespace cubesaw
