#pragma once

// Hypercube geometry, the Walsh-Hadamard (Fourier) transform on Z_2^N,
// convolution, and simple-random-walk quantities.

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "cubesaw/errors.hpp"
#include "cubesaw/numeric.hpp"

namespace cubesaw {

/// A point of Q^N as a bit pattern. Addition is bitwise xor, so every
/// vertex is its own inverse.
struct Vertex {
  std::uint64_t bits = 0;

  friend constexpr Vertex operator+(Vertex a, Vertex b) noexcept { return {a.bits ^ b.bits}; }
  friend constexpr Vertex operator-(Vertex a, Vertex b) noexcept { return {a.bits ^ b.bits}; }
  friend constexpr bool operator==(Vertex, Vertex) noexcept = default;
};

/// Number of coordinates equal to one.
constexpr int hamming_weight(Vertex v) noexcept { return std::popcount(v.bits); }

/// Parity of the bitwise dot product k.x, i.e. the sign exponent in (-1)^{k.x}.
constexpr int dot_parity(Vertex k, Vertex x) noexcept { return std::popcount(k.bits & x.bits) & 1; }

/// Dimension N of the hypercube together with its volume V = 2^N.
class Dim {
 public:
  static constexpr int kMax = 63;
  /// V-length arrays are only materialised up to this dimension.
  static constexpr int kMaxDense = 30;

  explicit Dim(int n);

  int n() const noexcept { return n_; }
  std::uint64_t volume() const noexcept { return std::uint64_t{1} << n_; }
  bool contains(Vertex v) const noexcept { return n_ == 64 || (v.bits >> n_) == 0; }

  /// Throws DomainError unless V-length arrays are allowed for this N.
  void require_dense() const;

  friend bool operator==(Dim, Dim) noexcept = default;

 private:
  int n_;
};

/// A scalar field over all 2^N vertices. T is BigInt (integer fields,
/// exact), Rational (exact) or double (float diagnostics).
template <typename T>
class CubeFn {
 public:
  using value_type = T;

  explicit CubeFn(Dim dim) : dim_(dim) {
    dim.require_dense();
    values_.assign(dim.volume(), T(0));
  }

  CubeFn(Dim dim, std::vector<T> values) : dim_(dim), values_(std::move(values)) {
    dim.require_dense();
    if (values_.size() != dim.volume()) {
      throw DomainError("CubeFn: expected " + std::to_string(dim.volume()) + " values, got " +
                        std::to_string(values_.size()));
    }
  }

  /// Indicator of a single vertex.
  static CubeFn delta(Dim dim, Vertex at = {}) {
    CubeFn f(dim);
    f[at] = T(1);
    return f;
  }

  static CubeFn constant(Dim dim, const T& c) {
    CubeFn f(dim);
    for (auto& v : f.values_) v = c;
    return f;
  }

  /// Field whose value at x is by_weight[|x|].
  static CubeFn radial(Dim dim, std::span<const T> by_weight) {
    if (by_weight.size() != static_cast<std::size_t>(dim.n() + 1)) {
      throw DomainError("radial profile needs N+1 entries");
    }
    CubeFn f(dim);
    for (std::uint64_t x = 0; x < f.size(); ++x) f.values_[x] = by_weight[std::popcount(x)];
    return f;
  }

  Dim dim() const noexcept { return dim_; }
  std::uint64_t size() const noexcept { return values_.size(); }

  const T& operator[](Vertex v) const { return values_[v.bits]; }
  T& operator[](Vertex v) { return values_[v.bits]; }
  const T& at(std::uint64_t index) const { return values_.at(index); }

  std::span<const T> values() const noexcept { return values_; }
  std::span<T> values() noexcept { return values_; }

  friend bool operator==(const CubeFn&, const CubeFn&) = default;

  CubeFn& operator+=(const CubeFn& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  CubeFn& operator-=(const CubeFn& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  CubeFn& operator*=(const T& c) {
    for (auto& v : values_) v *= c;
    return *this;
  }
  friend CubeFn operator+(CubeFn a, const CubeFn& b) { return a += b; }
  friend CubeFn operator-(CubeFn a, const CubeFn& b) { return a -= b; }
  friend CubeFn operator*(CubeFn a, const T& c) { return a *= c; }

  /// Pointwise (Hadamard) product; the transform-side image of convolution.
  CubeFn pointwise(const CubeFn& o) const {
    require_same_dim(o);
    CubeFn r = *this;
    for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] *= o.values_[i];
    return r;
  }

  T sum() const {
    T s(0);
    for (const auto& v : values_) s += v;
    return s;
  }

  void require_same_dim(const CubeFn& o) const {
    if (!(dim_ == o.dim_)) throw DomainError("CubeFn dimension mismatch");
  }

 private:
  Dim dim_;
  std::vector<T> values_;
};

using IntCubeFn = CubeFn<BigInt>;
using ExactCubeFn = CubeFn<Rational>;
using FloatCubeFn = CubeFn<double>;

namespace detail {

template <typename T>
void butterfly(std::span<T> v) {
  const std::size_t n = v.size();
  for (std::size_t len = 1; len < n; len <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * len) {
      for (std::size_t j = i; j < i + len; ++j) {
        T a = v[j];
        T b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
    }
  }
}

}  // namespace detail

/// f^(k) = sum_x f(x) (-1)^{k.x}, computed by the in-place butterfly in O(V N).
template <typename T>
CubeFn<T> walsh_transform(CubeFn<T> f) {
  detail::butterfly(f.values());
  return f;
}

/// f(x) = V^{-1} sum_k f^(k) (-1)^{k.x}. For integer fields a remainder in the
/// division by V means the input was not the transform of an integer field;
/// that raises DomainError rather than rounding.
template <typename T>
CubeFn<T> inverse_walsh(CubeFn<T> fhat) {
  detail::butterfly(fhat.values());
  const std::uint64_t volume = fhat.dim().volume();
  if constexpr (std::is_same_v<T, BigInt>) {
    BigInt vol(std::to_string(volume), 10);
    for (auto& v : fhat.values()) {
      if (!mpz_divisible_p(v.get_mpz_t(), vol.get_mpz_t())) {
        throw DomainError("inverse_walsh: value " + to_string(v) + " not divisible by V=" + std::to_string(volume) +
                          " (corrupted transform)");
      }
      mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), vol.get_mpz_t());
    }
  } else if constexpr (std::is_same_v<T, Rational>) {
    Rational inv(BigInt(1), BigInt(std::to_string(volume), 10));
    for (auto& v : fhat.values()) v *= inv;
  } else {
    for (auto& v : fhat.values()) v /= static_cast<T>(volume);
  }
  return fhat;
}

/// Fields up to this volume are convolved directly; larger ones go through
/// the transform.
inline constexpr std::uint64_t kDirectConvolutionMaxVolume = 256;

template <typename T>
CubeFn<T> convolve_direct(const CubeFn<T>& f, const CubeFn<T>& g) {
  f.require_same_dim(g);
  CubeFn<T> r(f.dim());
  const std::uint64_t volume = f.size();
  for (std::uint64_t y = 0; y < volume; ++y) {
    const T& gy = g.values()[y];
    if (gy == 0) continue;
    for (std::uint64_t x = 0; x < volume; ++x) r.values()[x] += f.values()[x ^ y] * gy;
  }
  return r;
}

template <typename T>
CubeFn<T> convolve_transform(const CubeFn<T>& f, const CubeFn<T>& g) {
  f.require_same_dim(g);
  return inverse_walsh(walsh_transform(f).pointwise(walsh_transform(g)));
}

/// (f*g)(x) = sum_y f(x-y) g(y).
template <typename T>
CubeFn<T> convolve(const CubeFn<T>& f, const CubeFn<T>& g) {
  f.require_same_dim(g);
  if (f.size() <= kDirectConvolutionMaxVolume) return convolve_direct(f, g);
  return convolve_transform(f, g);
}

/// f_k(x) = (1 - (-1)^{k.x}) f(x).
template <typename T>
CubeFn<T> twist(const CubeFn<T>& f, Vertex k) {
  CubeFn<T> r(f.dim());
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    if (dot_parity(k, Vertex{x})) r.values()[x] = f.values()[x] * T(2);
  }
  return r;
}

/// D(x) = 1/N for |x| = 1, zero elsewhere.
ExactCubeFn step_distribution(Dim dim);

/// D^(k) = 1 - 2|k|/N. Needs only the weight, so any N <= 63 is accepted.
Rational d_hat(Dim dim, Vertex k);
Rational d_hat_weight(Dim dim, int weight);

enum class RwRoute { transform, convolution };

/// D^{*i}: the i-step transition probabilities of simple random walk.
ExactCubeFn rw_power(Dim dim, int steps, RwRoute route = RwRoute::transform);

/// C^_p(k) = 1 / (1 - pN + 2p|k|) for 0 <= p < 1/N.
Rational rw_green_hat(Dim dim, const Rational& p, int weight);

/// C_p(x) = sum_n w_n(x) p^n, by inverse transform of C^_p.
ExactCubeFn rw_green(Dim dim, const Rational& p);

/// C-bar_p(k, l) = (1 - D^(k)) C^_p(l) C^_p(k+l).
Rational rw_green_bar(Dim dim, const Rational& p, Vertex k, Vertex l);

FloatCubeFn to_float(const ExactCubeFn& f);

}  // namespace cubesaw
