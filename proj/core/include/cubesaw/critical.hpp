#pragma once

// The finite-volume critical point z_N(lambda), the linearization of 1/chi
// around it, exact inequality checks and the bootstrap diagnostics.

#include <optional>
#include <span>
#include <vector>

#include "cubesaw/cube.hpp"
#include "cubesaw/numeric.hpp"
#include "cubesaw/saw.hpp"

namespace cubesaw {

struct CriticalPoint {
  Dim dim{1};
  Rational lambda;
  /// lambda V^{1/2}, the value chi takes at z_n.
  long double target = 0;
  long double z_n = 0;
  long double mu_n = 0;
  /// Relative residual bound |chi(z_n) - target| <= tol * target.
  long double tol = 1e-12L;
  long double residual = 0;
  long double bracket_lo = 0;
  long double bracket_hi = 0;
};

/// Bisection for chi(z) = lambda V^{1/2} on the supplied polynomial, which
/// may be truncated. Throws DomainError when lambda^2 V < 1.
CriticalPoint solve_critical(const SawSeries& series, const Rational& lambda, long double tol = 1e-12L);
/// Enumerates the full polynomial first.
CriticalPoint solve_critical(Dim dim, const Rational& lambda, long double tol = 1e-12L,
                             const EnumerationOptions& options = {});

/// zeta_p = z_N (1 - V^{-p}) for 0 < p < 1/2.
long double zeta_p(const CriticalPoint& cp, const Rational& p);

template <typename T>
struct Reciprocal {
  T f;
  T f_prime;
};

/// F = 1/chi and F' = -chi'/chi^2.
Reciprocal<Rational> reciprocal_susceptibility(const SawSeries& series, const Rational& z);
Reciprocal<long double> reciprocal_susceptibility(const SawSeries& series, long double z);

struct Linearization {
  long double zeta_p = 0;
  long double F_at = 0;
  long double F_prime_at = 0;
  long double alpha_n = 0;
  long double beta_n = 0;
  long double amplitude = 0;
  long double growth_ratio = 0;
};

/// The tangent line of F at zeta_p.
Linearization linearize(const SawSeries& series, const CriticalPoint& cp, const Rational& p);
Linearization linearize(const SawSeries& series, const Rational& lambda, const Rational& p);

struct ChiBoundCheck {
  bool ok = true;
  Rational z;
  Rational w;
  Rational chi_z;
  Rational bound;
};

/// chi(z) >= 1 / (z/(w chi(w)) + 1 - z/w) for 0 < z <= w, exactly.
ChiBoundCheck check_chi_lower_bound(const SawSeries& series, const Rational& z, const Rational& w);

struct DifferentialCheck {
  bool ok = true;
  Rational lower;   // chi^2 / B
  Rational middle;  // d/dz [z chi]
  Rational upper;   // chi^2
};

/// chi^2 / B <= d/dz [z chi] <= chi^2 at z, exactly.
DifferentialCheck check_differential_inequality(const SawProfile& profile, const Rational& z);

/// c_{n+m} <= c_n c_m for every n + m within the series. Returns the first
/// failing (n, m) if any.
std::optional<std::pair<int, int>> find_submultiplicativity_violation(const SawSeries& series);

struct BootstrapValues {
  Rational p_z;  // p_z N = 1 - 1/chi(z)
  Rational f1;
  Rational f2;
  Rational f3;
  /// beta_z = 1/N + chi^2 / V.
  Rational beta_z;
};

/// f1 = zN, f2 = max_k |G^(k)| / C^_{p_z}(k),
/// f3 = max_{k != 0} max_l |G^_{z,k}(l)| / C-bar_{p_z}(k, l), all exact.
/// When z_critical is given, z above it is rejected.
BootstrapValues bootstrap_diagnostics(const SawProfile& profile, const Rational& z,
                                      std::optional<long double> z_critical = std::nullopt);

/// sum_{n >= 1} n^eps a_n z^n.
long double fractional_derivative(std::span<const long double> coeffs, long double eps, long double z);
/// Exact version for integer eps.
Rational fractional_derivative(std::span<const Rational> coeffs, unsigned eps, const Rational& z);

struct FractionalCheck {
  long double series_value = 0;
  long double integral_value = 0;
  long double relative_error = 0;
  /// Quadrature's own error estimate, relative to the integral.
  long double quadrature_error = 0;
};

/// Compares the series definition of the fractional derivative with
/// gamma z int_0^inf f'(z e^{-t}) e^{-t} t^{-eps} dt, gamma = 1/Gamma(1-eps).
FractionalCheck fractional_integral_check(std::span<const long double> coeffs, long double eps, long double z);

/// max_x D^{*i}(x) N^{ceil(i/2)}.
Rational rw_power_scaled_max(Dim dim, int steps);

/// |mu(lambda1) / mu(lambda2) - 1| V^{1/2}.
long double mu_ratio_diagnostic(const SawSeries& series, const Rational& lambda1, const Rational& lambda2);

}  // namespace cubesaw
