#pragma once

#include <string>
#include <vector>

#include "cubesaw/numeric.hpp"

namespace cubesaw {

/// A polynomial in N with integer coefficients; coefficient(q) multiplies N^q.
class NPoly {
 public:
  NPoly() = default;
  explicit NPoly(std::vector<BigInt> coefficients);

  /// N (N-1) ... (N-k+1).
  static NPoly falling_factorial(unsigned k);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  BigInt coefficient(int q) const;
  const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }

  BigInt operator()(const BigInt& n) const;

  NPoly& operator+=(const NPoly& o);
  NPoly& operator-=(const NPoly& o);
  NPoly& operator*=(const BigInt& c);
  friend NPoly operator+(NPoly a, const NPoly& b) { return a += b; }
  friend NPoly operator-(NPoly a, const NPoly& b) { return a -= b; }
  friend NPoly operator*(NPoly a, const BigInt& c) { return a *= c; }
  friend NPoly operator*(const NPoly& a, const NPoly& b);
  friend bool operator==(const NPoly&, const NPoly&) = default;

  /// Human-readable form such as "N^2 - N".
  std::string str() const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

}  // namespace cubesaw
