#pragma once

// Exact enumeration of self-avoiding walks on Q^N and the observables built
// from the counts.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cubesaw/cube.hpp"
#include "cubesaw/numeric.hpp"

namespace cubesaw {

/// Upper limit on DFS nodes an enumeration may visit, checked against a
/// worst-case estimate before any work starts.
struct EnumerationBudget {
  std::uint64_t max_nodes = 4'000'000'000ULL;
};

struct EnumerationOptions {
  EnumerationBudget budget{};
  /// Depth of the prefix tree whose subtrees become independent tasks.
  int split_depth = 3;
};

/// c_n^{(N)}(x) for every n <= max_steps, stored once per Hamming weight of x.
class SawProfile {
 public:
  SawProfile(Dim dim, int max_steps, std::vector<std::vector<BigInt>> counts_by_weight);

  Dim dim() const noexcept { return dim_; }
  int max_steps() const noexcept { return max_steps_; }

  /// c_n(x) for any x with |x| == weight.
  const BigInt& entry(int n, int weight) const { return counts_.at(n).at(weight); }
  std::span<const BigInt> row(int n) const { return counts_.at(n); }

  /// c_n = sum_w binom(N, w) c_n(weight w).
  BigInt total(int n) const;

  /// c_n(x) as a dense field; requires N <= Dim::kMaxDense.
  IntCubeFn field(int n) const;

 private:
  Dim dim_;
  int max_steps_;
  std::vector<std::vector<BigInt>> counts_;
};

/// [c_0, ..., c_{n_max}]: the coefficients of the susceptibility polynomial.
class SawSeries {
 public:
  SawSeries(Dim dim, std::vector<BigInt> coefficients);

  Dim dim() const noexcept { return dim_; }
  int max_steps() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const BigInt> coefficients() const noexcept { return coeffs_; }
  const BigInt& operator[](int n) const { return coeffs_.at(n); }

  /// True when the series holds every nonzero c_n, i.e. n_max >= V - 1.
  bool is_full() const noexcept;

  /// The first n+1 coefficients.
  SawSeries prefix(int n) const;

  friend bool operator==(const SawSeries&, const SawSeries&) = default;

 private:
  Dim dim_;
  std::vector<BigInt> coeffs_;
};

/// Largest number of steps a self-avoiding walk on Q^N can take (V - 1).
int full_steps(Dim dim);

/// Worst-case DFS node count for walks of up to n_max steps.
long double estimate_saw_nodes(Dim dim, int n_max);

SawProfile count_saw_by_endpoint(Dim dim, int n_max, const EnumerationOptions& options = {});
SawSeries count_saw(Dim dim, int n_max, const EnumerationOptions& options = {});
SawSeries totals(const SawProfile& profile);

/// chi_N(z) truncated at the series' n_max.
Rational susceptibility(const SawSeries& series, const Rational& z);
long double susceptibility(const SawSeries& series, long double z);
/// Convenience: enumerates first. n_max defaults to the full polynomial.
Rational susceptibility(Dim dim, const Rational& z, std::optional<int> n_max = std::nullopt,
                        const EnumerationOptions& options = {});

/// G_z(x) = sum_n c_n(x) z^n, by weight class.
std::vector<Rational> two_point_by_weight(const SawProfile& profile, const Rational& z);
ExactCubeFn two_point(const SawProfile& profile, const Rational& z);

/// B(z) = sum_x G_z(x)^2.
Rational bubble(const SawProfile& profile, const Rational& z);
long double bubble(const SawProfile& profile, long double z);

/// E_z L = chi(z)^{-1} d/dz [z chi(z)], counting vertices rather than steps.
Rational expected_length(const SawSeries& series, const Rational& z);
long double expected_length(const SawSeries& series, long double z);

/// d/dz [z chi(z)] as an exact polynomial evaluation.
Rational z_chi_derivative(const SawSeries& series, const Rational& z);
long double z_chi_derivative(const SawSeries& series, long double z);

/// c_{V-1}: Hamilton paths of Q^N starting at 0.
BigInt hamilton_path_count(Dim dim, const EnumerationOptions& options = {});

}  // namespace cubesaw
