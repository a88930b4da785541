#pragma once

// Truncated power series in s = 1/N and the iterative computation of the
// 1/N expansions of z_N, mu_N and the amplitude A_N.

#include <string>
#include <vector>

#include "cubesaw/npoly.hpp"
#include "cubesaw/numeric.hpp"

namespace cubesaw {

/// c_0 + c_1 s + ... + c_m s^m + O(s^{m+1}).
class SeriesS {
 public:
  explicit SeriesS(int order, std::vector<Rational> coefficients = {});

  /// The series s itself.
  static SeriesS s(int order);
  static SeriesS constant(int order, const Rational& c);

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& operator[](int j) const { return coeffs_.at(j); }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

  /// Lowest index with a nonzero coefficient; order() + 1 for the zero series.
  int valuation() const;

  /// Truncates or pads with zeros.
  SeriesS with_order(int order) const;
  /// Multiplication by s^q; the order grows by q.
  SeriesS shift_up(int q) const;
  /// Division by s^q; throws InvariantViolation if a coefficient below s^q is nonzero.
  SeriesS shift_down(int q) const;

  SeriesS pow(unsigned k) const;
  /// Requires a nonzero constant term.
  SeriesS reciprocal() const;

  SeriesS& operator+=(const SeriesS& o);
  SeriesS& operator-=(const SeriesS& o);
  SeriesS& operator*=(const Rational& c);
  friend SeriesS operator+(SeriesS a, const SeriesS& b) { return a += b; }
  friend SeriesS operator-(SeriesS a, const SeriesS& b) { return a -= b; }
  friend SeriesS operator*(SeriesS a, const Rational& c) { return a *= c; }
  /// The result has the smaller of the two orders.
  friend SeriesS operator*(const SeriesS& a, const SeriesS& b);
  friend bool operator==(const SeriesS&, const SeriesS&) = default;

  /// Throws InvariantViolation unless every coefficient is an integer.
  std::vector<BigInt> integer_coefficients() const;

 private:
  std::vector<Rational> coeffs_;
};

SeriesS series_reciprocal(const SeriesS& f);

/// pi_{k,delta}^{(M)} from the built-in table, extended on demand by direct
/// enumeration.
BigInt lace_count(int k, int delta, int big_m);

/// b_{N,k} = sum_{M=1}^{m} (-1)^M pi_k^{(M)}(N).
NPoly build_bnk(int k, int m);

/// a_1 .. a_m in z_N = sum a_n N^{-n} + O(N^{-m-1}).
std::vector<BigInt> expand_z(int m);

struct MuExpansion {
  /// coefficients[j] multiplies N^{1-j}.
  std::vector<BigInt> coefficients;
  std::string str() const;
};

/// mu_N = 1/z_N from the first m coefficients of z_N.
MuExpansion expand_mu(int m);
MuExpansion mu_from_z(const std::vector<BigInt>& z_coefficients);

/// a'_0 .. a'_m in A_N = sum a'_n N^{-n} + O(N^{-m-1}).
std::vector<BigInt> expand_amplitude(int m);

}  // namespace cubesaw
