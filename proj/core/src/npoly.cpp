#include "cubesaw/npoly.hpp"

#include <algorithm>

namespace cubesaw {

NPoly::NPoly(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

void NPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

NPoly NPoly::falling_factorial(unsigned k) {
  NPoly p(std::vector<BigInt>{1});
  for (unsigned j = 0; j < k; ++j) p = p * NPoly(std::vector<BigInt>{BigInt(-static_cast<long>(j)), 1});
  return p;
}

BigInt NPoly::coefficient(int q) const {
  if (q < 0 || q > degree()) return 0;
  return coeffs_[q];
}

BigInt NPoly::operator()(const BigInt& n) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * n + *it;
  return acc;
}

NPoly& NPoly::operator+=(const NPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

NPoly& NPoly::operator-=(const NPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

NPoly& NPoly::operator*=(const BigInt& c) {
  for (auto& v : coeffs_) v *= c;
  trim();
  return *this;
}

NPoly operator*(const NPoly& a, const NPoly& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
  std::vector<BigInt> r(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return NPoly(std::move(r));
}

std::string NPoly::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int q = degree(); q >= 0; --q) {
    const BigInt& c = coeffs_[q];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    if (mag != 1 || q == 0) out += mag.get_str();
    if (q >= 1) out += "N";
    if (q >= 2) out += "^" + std::to_string(q);
  }
  return out;
}

}  // namespace cubesaw
