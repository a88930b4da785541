#include "cubesaw/critical.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "cubesaw/errors.hpp"

namespace cubesaw {

namespace {

long double chi_at(const SawSeries& series, long double z) { return evaluate(series.coefficients(), z); }

}  // namespace

CriticalPoint solve_critical(const SawSeries& series, const Rational& lambda, long double tol) {
  const Dim dim = series.dim();
  if (sgn(lambda) <= 0) throw DomainError("lambda must be positive");
  // lambda V^{1/2} >= 1 iff lambda^2 V >= 1, decided exactly.
  const Rational squared = lambda * lambda * Rational(BigInt(1) << static_cast<mp_bitcnt_t>(dim.n()));
  if (squared < 1) throw DomainError("need lambda V^{1/2} >= 1, got lambda = " + to_string(lambda));
  if (!(tol > 0)) throw DomainError("tolerance must be positive");

  CriticalPoint cp;
  cp.dim = dim;
  cp.lambda = lambda;
  cp.tol = tol;
  cp.target = to_long_double(lambda) * std::sqrt(std::ldexp(1.0L, dim.n()));
  if (squared == 1) {
    cp.z_n = 0;
    cp.mu_n = INFINITY;
    return cp;
  }
  if (series.max_steps() < 1) throw DomainError("susceptibility polynomial is constant; no root");

  long double lo = 0;
  long double hi = 1;
  for (int i = 0; chi_at(series, hi) <= cp.target; ++i) {
    if (i > 200) throw InvariantViolation("solve_critical: could not bracket the root");
    lo = hi;
    hi *= 2;
  }
  for (int i = 0; i < 256; ++i) {
    const long double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (chi_at(series, mid) < cp.target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const long double r_lo = std::fabs(chi_at(series, lo) - cp.target);
  const long double r_hi = std::fabs(chi_at(series, hi) - cp.target);
  cp.z_n = r_lo <= r_hi ? lo : hi;
  cp.residual = std::min(r_lo, r_hi) / cp.target;
  cp.bracket_lo = lo;
  cp.bracket_hi = hi;
  cp.mu_n = 1 / cp.z_n;
  if (cp.residual > tol) {
    throw InvariantViolation("solve_critical: residual above tolerance");
  }
  return cp;
}

CriticalPoint solve_critical(Dim dim, const Rational& lambda, long double tol, const EnumerationOptions& options) {
  return solve_critical(count_saw(dim, full_steps(dim), options), lambda, tol);
}

long double zeta_p(const CriticalPoint& cp, const Rational& p) {
  if (p <= 0 || p >= Rational(1, 2)) throw DomainError("p must lie in (0, 1/2)");
  const long double exponent = -static_cast<long double>(cp.dim.n()) * to_long_double(p);
  return cp.z_n * (1 - std::exp2(exponent));
}

Reciprocal<Rational> reciprocal_susceptibility(const SawSeries& series, const Rational& z) {
  const Rational chi = evaluate(series.coefficients(), z);
  const auto d = derivative(series.coefficients());
  const Rational chi_prime = evaluate(d, z);
  return {1 / chi, -chi_prime / (chi * chi)};
}

Reciprocal<long double> reciprocal_susceptibility(const SawSeries& series, long double z) {
  const long double chi = evaluate(series.coefficients(), z);
  const auto d = derivative(series.coefficients());
  const long double chi_prime = evaluate(d, z);
  return {1 / chi, -chi_prime / (chi * chi)};
}

Linearization linearize(const SawSeries& series, const CriticalPoint& cp, const Rational& p) {
  Linearization lin;
  lin.zeta_p = zeta_p(cp, p);
  const auto r = reciprocal_susceptibility(series, lin.zeta_p);
  lin.F_at = r.f;
  lin.F_prime_at = r.f_prime;
  lin.alpha_n = r.f - lin.zeta_p * r.f_prime;
  lin.beta_n = -r.f_prime;
  lin.amplitude = 1 / lin.alpha_n;
  lin.growth_ratio = lin.beta_n / lin.alpha_n;
  return lin;
}

Linearization linearize(const SawSeries& series, const Rational& lambda, const Rational& p) {
  return linearize(series, solve_critical(series, lambda), p);
}

ChiBoundCheck check_chi_lower_bound(const SawSeries& series, const Rational& z, const Rational& w) {
  if (z <= 0 || z > w) throw DomainError("check_chi_lower_bound needs 0 < z <= w");
  ChiBoundCheck c;
  c.z = z;
  c.w = w;
  c.chi_z = evaluate(series.coefficients(), z);
  const Rational chi_w = evaluate(series.coefficients(), w);
  const Rational ratio = z / w;
  c.bound = 1 / (ratio / chi_w + 1 - ratio);
  c.ok = c.chi_z >= c.bound;
  return c;
}

DifferentialCheck check_differential_inequality(const SawProfile& profile, const Rational& z) {
  const SawSeries series = totals(profile);
  const Rational chi = evaluate(series.coefficients(), z);
  DifferentialCheck c;
  c.upper = chi * chi;
  c.lower = c.upper / bubble(profile, z);
  c.middle = z_chi_derivative(series, z);
  c.ok = c.lower <= c.middle && c.middle <= c.upper;
  return c;
}

std::optional<std::pair<int, int>> find_submultiplicativity_violation(const SawSeries& series) {
  const int n_max = series.max_steps();
  for (int n = 1; n <= n_max; ++n) {
    for (int m = 1; n + m <= n_max; ++m) {
      if (series[n + m] > series[n] * series[m]) return std::pair{n, m};
    }
  }
  return std::nullopt;
}

BootstrapValues bootstrap_diagnostics(const SawProfile& profile, const Rational& z,
                                      std::optional<long double> z_critical) {
  const Dim dim = profile.dim();
  dim.require_dense();
  if (z < 0) throw DomainError("bootstrap_diagnostics needs z >= 0");
  if (z_critical && to_long_double(z) > *z_critical) {
    throw DomainError("bootstrap_diagnostics: z exceeds z_N, so p_z leaves [0, 1/N)");
  }
  const int n_dim = dim.n();
  const ExactCubeFn g_hat = walsh_transform(two_point(profile, z));
  const Rational chi = g_hat.at(0);

  BootstrapValues out;
  out.p_z = (1 - 1 / chi) / n_dim;
  out.f1 = z * n_dim;
  out.beta_z = Rational(1, n_dim) + chi * chi / Rational(BigInt(dim.volume()));

  std::vector<Rational> c_hat(n_dim + 1);
  for (int w = 0; w <= n_dim; ++w) c_hat[w] = rw_green_hat(dim, out.p_z, w);

  out.f2 = 0;
  for (std::uint64_t k = 0; k < g_hat.size(); ++k) {
    out.f2 = std::max(out.f2, Rational(abs(g_hat.at(k)) / c_hat[std::popcount(k)]));
  }
  // G^_{z,k}(l) = G^(l) - G^(k + l); C-bar = (1 - D^(k)) C^(l) C^(k + l).
  out.f3 = 0;
  for (std::uint64_t k = 1; k < g_hat.size(); ++k) {
    const Rational one_minus_d = 1 - d_hat(dim, Vertex{k});
    for (std::uint64_t l = 0; l < g_hat.size(); ++l) {
      const std::uint64_t kl = k ^ l;
      const Rational num = abs(g_hat.at(l) - g_hat.at(kl));
      const Rational den = one_minus_d * c_hat[std::popcount(l)] * c_hat[std::popcount(kl)];
      out.f3 = std::max(out.f3, Rational(num / den));
    }
  }
  return out;
}

long double fractional_derivative(std::span<const long double> coeffs, long double eps, long double z) {
  if (!(eps > 0)) throw DomainError("fractional derivative needs eps > 0");
  long double sum = 0;
  long double power = 1;
  for (std::size_t n = 1; n < coeffs.size(); ++n) {
    power *= z;
    sum += std::pow(static_cast<long double>(n), eps) * coeffs[n] * power;
  }
  return sum;
}

Rational fractional_derivative(std::span<const Rational> coeffs, unsigned eps, const Rational& z) {
  if (eps == 0) throw DomainError("fractional derivative needs eps > 0");
  Rational sum = 0;
  Rational power = 1;
  for (std::size_t n = 1; n < coeffs.size(); ++n) {
    power *= z;
    BigInt weight;
    mpz_ui_pow_ui(weight.get_mpz_t(), n, eps);
    sum += Rational(weight) * coeffs[n] * power;
  }
  return sum;
}

FractionalCheck fractional_integral_check(std::span<const long double> coeffs, long double eps, long double z) {
  if (!(eps > 0 && eps < 1)) throw DomainError("fractional_integral_check needs 0 < eps < 1");
  if (!(z > 0)) throw DomainError("fractional_integral_check needs z > 0");
  using boost::math::quadrature::gauss_kronrod;

  std::vector<long double> d(coeffs.size() > 1 ? coeffs.size() - 1 : 0);
  for (std::size_t n = 1; n < coeffs.size(); ++n) d[n - 1] = coeffs[n] * static_cast<long double>(n);
  auto f_prime = [&](long double y) { return horner(std::span<const long double>(d), y, [](long double c) { return c; }); };
  auto g = [&](long double t) { return f_prime(z * std::exp(-t)) * std::exp(-t); };

  // On [0, 1] substitute t = u^{1/(1-eps)}, which absorbs t^{-eps} dt.
  const long double power = 1 / (1 - eps);
  long double err_head = 0;
  long double err_tail = 0;
  const long double head =
      power * gauss_kronrod<long double, 61>::integrate([&](long double u) { return g(std::pow(u, power)); }, 0.0L,
                                                          1.0L, 15, 1e-15L, &err_head);
  const long double tail = gauss_kronrod<long double, 61>::integrate(
      [&](long double t) { return g(t) * std::pow(t, -eps); }, 1.0L, 50.0L, 15, 1e-15L, &err_tail);

  FractionalCheck out;
  out.integral_value = z * (head + tail) / std::tgamma(1 - eps);
  out.series_value = fractional_derivative(coeffs, eps, z);
  out.relative_error = std::fabs(out.integral_value - out.series_value) / std::fabs(out.series_value);
  out.quadrature_error = (err_head * power + err_tail) / std::fabs(head + tail);
  return out;
}

Rational rw_power_scaled_max(Dim dim, int steps) {
  const ExactCubeFn d = rw_power(dim, steps);
  Rational best = 0;
  for (const auto& v : d.values()) best = std::max(best, v);
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(dim.n()), static_cast<unsigned long>((steps + 1) / 2));
  return best * scale;
}

long double mu_ratio_diagnostic(const SawSeries& series, const Rational& lambda1, const Rational& lambda2) {
  const CriticalPoint a = solve_critical(series, lambda1);
  const CriticalPoint b = solve_critical(series, lambda2);
  return std::fabs(a.mu_n / b.mu_n - 1) * std::sqrt(std::ldexp(1.0L, series.dim().n()));
}

}  // namespace cubesaw
