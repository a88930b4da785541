#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cubesaw {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", an integer, or a finite decimal such as "0.125" or "-1e-3"
/// into an exact rational. Throws DomainError on malformed input.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

long double to_long_double(const Rational& q);
long double to_long_double(const BigInt& z);

/// Nearest rational with denominator `denominator` not exceeding x.
Rational floor_rational(long double x, std::uint64_t denominator);

BigInt binomial(unsigned n, unsigned k);

/// n (n-1) ... (n-k+1); 1 when k == 0.
BigInt falling_factorial(const BigInt& n, unsigned k);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Horner evaluation of sum_n coeffs[n] x^n. Scalar must be constructible
/// from BigInt via `convert`.
template <typename Scalar, typename Coefficient, typename Convert>
Scalar horner(std::span<const Coefficient> coeffs, const Scalar& x, Convert convert) {
  Scalar acc = Scalar(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * x + convert(*it);
  }
  return acc;
}

/// Exact evaluation of an integer-coefficient polynomial at a rational point.
Rational evaluate(std::span<const BigInt> coeffs, const Rational& x);
long double evaluate(std::span<const BigInt> coeffs, long double x);

/// Exact derivative coefficients: d/dx sum a_n x^n.
std::vector<BigInt> derivative(std::span<const BigInt> coeffs);

}  // namespace cubesaw
