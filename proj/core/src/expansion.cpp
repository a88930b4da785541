#include "cubesaw/expansion.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <tuple>

#include "cubesaw/errors.hpp"
#include "cubesaw/lace.hpp"

namespace cubesaw {

SeriesS::SeriesS(int order, std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  if (order < 0) throw DomainError("series order must be nonnegative");
  coeffs_.resize(order + 1, 0);
}

SeriesS SeriesS::s(int order) {
  SeriesS r(order);
  if (order >= 1) r.coeffs_[1] = 1;
  return r;
}

SeriesS SeriesS::constant(int order, const Rational& c) {
  SeriesS r(order);
  r.coeffs_[0] = c;
  return r;
}

int SeriesS::valuation() const {
  for (int j = 0; j <= order(); ++j) {
    if (coeffs_[j] != 0) return j;
  }
  return order() + 1;
}

SeriesS SeriesS::with_order(int order) const { return SeriesS(order, coeffs_); }

SeriesS SeriesS::shift_up(int q) const {
  std::vector<Rational> c(q, 0);
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  return SeriesS(order() + q, std::move(c));
}

SeriesS SeriesS::shift_down(int q) const {
  if (q > order()) throw InvariantViolation("shift_down past the truncation order");
  for (int j = 0; j < q; ++j) {
    if (coeffs_[j] != 0) throw InvariantViolation("negative power of s in a series that must be regular");
  }
  return SeriesS(order() - q, std::vector<Rational>(coeffs_.begin() + q, coeffs_.end()));
}

SeriesS SeriesS::pow(unsigned k) const {
  SeriesS r = constant(order(), 1);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

SeriesS SeriesS::reciprocal() const {
  if (coeffs_[0] == 0) throw DomainError("reciprocal needs a nonzero constant term");
  SeriesS r(order());
  r.coeffs_[0] = 1 / coeffs_[0];
  for (int j = 1; j <= order(); ++j) {
    Rational acc = 0;
    for (int i = 1; i <= j; ++i) acc += coeffs_[i] * r.coeffs_[j - i];
    r.coeffs_[j] = -acc / coeffs_[0];
  }
  return r;
}

SeriesS& SeriesS::operator+=(const SeriesS& o) {
  coeffs_.resize(std::min(order(), o.order()) + 1);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
  return *this;
}

SeriesS& SeriesS::operator-=(const SeriesS& o) {
  coeffs_.resize(std::min(order(), o.order()) + 1);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
  return *this;
}

SeriesS& SeriesS::operator*=(const Rational& c) {
  for (auto& v : coeffs_) v *= c;
  return *this;
}

SeriesS operator*(const SeriesS& a, const SeriesS& b) {
  const int order = std::min(a.order(), b.order());
  SeriesS r(order);
  for (int i = 0; i <= order; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (int j = 0; i + j <= order; ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return r;
}

std::vector<BigInt> SeriesS::integer_coefficients() const {
  std::vector<BigInt> out;
  for (const auto& c : coeffs_) {
    if (!is_integer(c)) throw InvariantViolation("non-integer coefficient " + to_string(c));
    out.push_back(c.get_num());
  }
  return out;
}

SeriesS series_reciprocal(const SeriesS& f) { return f.reciprocal(); }

// ---------------------------------------------------------------------------
// Lace-graph counts

namespace {

struct KnownCount {
  int k, delta, big_m, count;
};

// The nonzero counts with delta >= 2 for k <= 8, k - delta <= 4, M <= 4.
constexpr std::array<KnownCount, 6> kTable{{
    {4, 2, 1, 1},
    {6, 3, 1, 4},
    {8, 4, 1, 27},
    {5, 2, 2, 3},
    {7, 3, 2, 15},
    {6, 2, 3, 5},
}};

bool in_table_range(int k, int delta, int big_m) { return k <= 8 && k - delta <= 4 && big_m <= 4; }

}  // namespace

BigInt lace_count(int k, int delta, int big_m) {
  if (k < 2 || delta < 1 || big_m < 1) throw DomainError("lace_count: need k >= 2, delta >= 1, M >= 1");
  if (delta >= k) return 0;
  if (delta == 1) return k == big_m + 1 ? 1 : 0;
  if (in_table_range(k, delta, big_m)) {
    for (const auto& e : kTable) {
      if (e.k == k && e.delta == delta && e.big_m == big_m) return e.count;
    }
    return 0;
  }
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, BigInt> cache;
  const std::lock_guard lock(mutex);
  const auto key = std::tuple{k, delta, big_m};
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, pi_k_delta(k, delta, big_m)).first;
  return it->second;
}

namespace {

// sum_{M <= max_m} (-1)^M sum_{delta >= k - max_gap} pi_{k,delta}^{(M)} N(N-1)...(N-delta+1)
NPoly signed_lace_polynomial(int k, int max_m, int max_gap) {
  NPoly p;
  for (int big_m = 1; big_m <= max_m; ++big_m) {
    for (int delta = std::max(1, k - max_gap); delta < k; ++delta) {
      const BigInt count = lace_count(k, delta, big_m);
      if (count == 0) continue;
      NPoly term = NPoly::falling_factorial(static_cast<unsigned>(delta)) * count;
      if (big_m % 2) {
        p -= term;
      } else {
        p += term;
      }
    }
  }
  return p;
}

// P(N) z^k to order `order`, with N^q read as s^{-q}. z must have zero
// constant term, so the coefficients of z^k up to order + q only involve
// coefficients of z up to `order`.
SeriesS apply_npoly(const NPoly& p, const SeriesS& z, unsigned k, int order) {
  SeriesS out(order);
  if (p.degree() < 0) return out;
  if (z[0] != 0) throw InvariantViolation("z series must have zero constant term");
  for (int q = 0; q <= p.degree(); ++q) {
    const BigInt c = p.coefficient(q);
    if (c == 0) continue;
    const SeriesS zk = z.with_order(order + q).pow(k);
    out += zk.shift_down(q).with_order(order) * Rational(c);
  }
  return out;
}

// One step z <- s [1 - sum_k b_{N,k} z^k] at iteration parameter p.
SeriesS iterate_once(const SeriesS& z, int p, const std::vector<NPoly>& b) {
  const int order = z.order();
  SeriesS bracket = SeriesS::constant(order, 1);
  for (int k = 2; k <= 2 * p; ++k) bracket -= apply_npoly(b[k], z, static_cast<unsigned>(k), order);
  return bracket.shift_up(1).with_order(order);
}

SeriesS z_series(int m) {
  if (m < 1) throw DomainError("expansion order must be >= 1");
  const int p = m - 1;
  std::vector<NPoly> b(2 * p + 1);
  for (int k = 2; k <= 2 * p; ++k) b[k] = signed_lace_polynomial(k, p, p);
  SeriesS z = SeriesS::s(m);
  for (int i = 0; i < m; ++i) z = iterate_once(z, p, b);
  if (iterate_once(z, p, b) != z) throw InvariantViolation("z iteration did not reach a fixed point");
  if (z[0] != 0) throw InvariantViolation("z series has a nonzero constant term");
  return z;
}

}  // namespace

NPoly build_bnk(int k, int m) {
  if (k < 2 || m < 1) throw DomainError("build_bnk needs k >= 2 and m >= 1");
  if (k > 2 * m) throw DomainError("build_bnk needs k <= 2m");
  return signed_lace_polynomial(k, m, k);
}

std::vector<BigInt> expand_z(int m) {
  const auto all = z_series(m).integer_coefficients();
  return {all.begin() + 1, all.end()};
}

MuExpansion mu_from_z(const std::vector<BigInt>& z_coefficients) {
  if (z_coefficients.empty() || z_coefficients[0] == 0) throw DomainError("z expansion must start with a nonzero s term");
  // z / s = a_1 + a_2 s + ...; mu = N (z/s)^{-1}.
  std::vector<Rational> c(z_coefficients.begin(), z_coefficients.end());
  const SeriesS z_over_s(static_cast<int>(c.size()) - 1, c);
  return {z_over_s.reciprocal().integer_coefficients()};
}

MuExpansion expand_mu(int m) { return mu_from_z(expand_z(m)); }

std::string MuExpansion::str() const {
  std::string out;
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    const BigInt& c = coefficients[j];
    if (c == 0) continue;
    const BigInt mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    const int power = 1 - static_cast<int>(j);
    if (power == 1) {
      out += (mag == 1 ? std::string() : mag.get_str()) + "N";
    } else if (power == 0) {
      out += mag.get_str();
    } else {
      out += mag.get_str() + "/N" + (power == -1 ? std::string() : "^" + std::to_string(-power));
    }
  }
  return out.empty() ? "0" : out;
}

std::vector<BigInt> expand_amplitude(int m) {
  if (m < 0) throw DomainError("amplitude order must be >= 0");
  const SeriesS z = z_series(m + 1).with_order(m + 1);
  // 1/A = z/s + sum_k sum_M (-1)^M k pi_k^{(M)} z^k, kept to order m.
  SeriesS inverse_a = z.shift_down(1).with_order(m);
  for (int k = 2; k <= 2 * m; ++k) {
    const NPoly p = signed_lace_polynomial(k, m, m) * BigInt(k);
    inverse_a += apply_npoly(p, z.with_order(m), static_cast<unsigned>(k), m);
  }
  return inverse_a.reciprocal().integer_coefficients();
}

}  // namespace cubesaw
