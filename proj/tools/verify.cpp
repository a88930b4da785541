#include "verify.hpp"

#include <algorithm>
#include <random>

#include "cubesaw/critical.hpp"
#include "cubesaw/cube.hpp"
#include "cubesaw/expansion.hpp"
#include "cubesaw/lace.hpp"

namespace cubesaw::cli {

bool SuiteReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
}

namespace {

std::vector<int> dims_or(std::optional<int> n_dim, std::vector<int> fallback) {
  if (n_dim) return {*n_dim};
  return fallback;
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_same_v<T, BigInt>) {
      out += v[i].get_str();
    } else {
      out += std::to_string(v[i]);
    }
  }
  return out + "]";
}

}  // namespace

SuiteReport verify_recursion_suite(std::optional<int> n_dim, std::optional<int> max_steps,
                                   const EnumerationOptions& options) {
  SuiteReport report{"recursion", {}};
  const int n_max = max_steps.value_or(7);
  for (int n : dims_or(n_dim, {2, 3, 4})) {
    const RecursionReport r = verify_recursion(Dim(n), n_max, options);
    std::string detail = "n <= " + std::to_string(n_max);
    if (r.violation) {
      detail = "n=" + std::to_string(r.violation->n) + " weight=" + std::to_string(r.violation->weight) +
               " lhs=" + r.violation->lhs.get_str() + " rhs=" + r.violation->rhs.get_str();
    }
    report.checks.push_back({"recursion N=" + std::to_string(n), r.ok, detail});
  }
  return report;
}

SuiteReport verify_resummation_suite(std::optional<int> n_dim, std::optional<int> max_steps,
                                     const EnumerationOptions& options) {
  SuiteReport report{"resummation", {}};
  const int m_max = max_steps.value_or(6);
  for (int n : dims_or(n_dim, {2, 3})) {
    for (int m = 2; m <= m_max; ++m) {
      const WeightProfile laces = pi_alternating(Dim(n), m, options);
      const WeightProfile direct = pi_direct_oracle(Dim(n), m, options);
      report.checks.push_back({"pi N=" + std::to_string(n) + " m=" + std::to_string(m), laces == direct,
                               "total " + laces.total().get_str() + " vs " + direct.total().get_str()});
    }
  }
  return report;
}

SuiteReport verify_walsh_suite(std::optional<int> n_dim) {
  SuiteReport report{"walsh", {}};
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> value(-1000, 1000);
  for (int n : dims_or(n_dim, {2, 3, 4, 5, 6, 7, 8})) {
    const Dim dim(n);
    const BigInt volume(static_cast<unsigned long>(dim.volume()));
    auto random_field = [&] {
      IntCubeFn f(dim);
      for (auto& v : f.values()) v = value(rng);
      return f;
    };
    int round_trip = 0;
    int parseval = 0;
    int convolution = 0;
    constexpr int kFields = 100;
    for (int i = 0; i < kFields; ++i) {
      const IntCubeFn f = random_field();
      const IntCubeFn g = random_field();
      const IntCubeFn f_hat = walsh_transform(f);
      if (inverse_walsh(f_hat) == f) ++round_trip;
      BigInt lhs = 0;
      BigInt rhs = 0;
      for (std::uint64_t x = 0; x < f.size(); ++x) {
        lhs += f_hat.at(x) * f_hat.at(x);
        rhs += f.at(x) * f.at(x);
      }
      if (lhs == volume * rhs) ++parseval;
      if (walsh_transform(convolve_direct(f, g)) == f_hat.pointwise(walsh_transform(g))) ++convolution;
    }
    const std::string tag = " N=" + std::to_string(n);
    auto frac = [&](int ok) { return std::to_string(ok) + "/" + std::to_string(kFields); };
    report.checks.push_back({"round trip" + tag, round_trip == kFields, frac(round_trip)});
    report.checks.push_back({"parseval" + tag, parseval == kFields, frac(parseval)});
    report.checks.push_back({"convolution" + tag, convolution == kFields, frac(convolution)});

    const ExactCubeFn d_transform = walsh_transform(step_distribution(dim));
    bool closed_form = true;
    for (std::uint64_t k = 0; k < d_transform.size(); ++k) {
      closed_form = closed_form && d_transform.at(k) == d_hat(dim, Vertex{k});
    }
    report.checks.push_back({"D closed form" + tag, closed_form, ""});
  }
  return report;
}

SuiteReport verify_inequalities_suite(std::optional<int> n_dim, const EnumerationOptions& options) {
  SuiteReport report{"inequalities", {}};
  for (int n : dims_or(n_dim, {2, 3})) {
    const Dim dim(n);
    const std::string tag = " N=" + std::to_string(n);
    const SawProfile profile = count_saw_by_endpoint(dim, full_steps(dim), options);
    const SawSeries series = totals(profile);

    const auto bad = find_submultiplicativity_violation(series);
    report.checks.push_back({"submultiplicativity" + tag, !bad,
                             bad ? "n=" + std::to_string(bad->first) + " m=" + std::to_string(bad->second) : ""});

    const CriticalPoint cp = solve_critical(series, Rational(1));
    const Rational z_top = floor_rational(cp.z_n, 1ULL << 32);
    int grid_ok = 0;
    int grid_total = 0;
    for (int j = 1; j <= 4; ++j) {
      const Rational w = z_top * (Rational(j) / 4);
      for (int i = 1; i <= 5; ++i) {
        ++grid_total;
        if (check_chi_lower_bound(series, w * (Rational(i) / 5), w).ok) ++grid_ok;
      }
    }
    report.checks.push_back({"chi lower bound" + tag, grid_ok == grid_total,
                             std::to_string(grid_ok) + "/" + std::to_string(grid_total)});

    int diff_ok = 0;
    constexpr int kPoints = 10;
    for (int i = 1; i <= kPoints; ++i) {
      if (check_differential_inequality(profile, z_top * (Rational(i) / kPoints)).ok) ++diff_ok;
    }
    report.checks.push_back({"differential inequality" + tag, diff_ok == kPoints,
                             std::to_string(diff_ok) + "/" + std::to_string(kPoints)});

    bool pi2 = true;
    for (int m = 2; m <= 6; ++m) pi2 = pi2 && check_pi2_bound(dim, m, options);
    report.checks.push_back({"pi2 bound" + tag, pi2, "m <= 6"});
  }
  return report;
}

SuiteReport verify_goldens_suite() {
  SuiteReport report{"goldens", {}};
  auto expect = [&](std::string name, bool ok, std::string detail = "") {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  using V = std::vector<BigInt>;

  const auto z5 = expand_z(5);
  expect("expand z order 5", z5 == V{1, 1, 2, 7, 39}, join(z5));
  expect("expand z order 1", expand_z(1) == V{1}, join(expand_z(1)));
  expect("expand z order 2", expand_z(2) == V{1, 1}, join(expand_z(2)));
  const auto amp = expand_amplitude(4);
  expect("expand amplitude order 4", amp == V{1, 1, 4, 26, 231}, join(amp));
  const auto mu = expand_mu(5);
  expect("expand mu order 5", mu.coefficients == V{1, -1, -1, -4, -26}, mu.str());
  expect("b_{N,3}", build_bnk(3, 2) == NPoly({0, 1}), build_bnk(3, 2).str());

  struct Count {
    int k, delta, big_m, value;
  };
  const Count table[] = {{2, 1, 1, 1}, {4, 2, 1, 1}, {6, 3, 1, 4}, {8, 4, 1, 27}, {3, 1, 2, 1},
                         {5, 2, 2, 3}, {7, 3, 2, 15}, {4, 1, 3, 1}, {6, 2, 3, 5}, {5, 1, 4, 1}};
  for (const auto& c : table) {
    const BigInt got = pi_k_delta(c.k, c.delta, c.big_m);
    expect("pi(" + std::to_string(c.k) + "," + std::to_string(c.delta) + "," + std::to_string(c.big_m) + ")",
           got == c.value, got.get_str());
  }
  int zero_failures = 0;
  for (int k = 2; k <= 8; ++k) {
    for (int delta = std::max(1, k - 4); delta < k; ++delta) {
      for (int big_m = 1; big_m <= 4; ++big_m) {
        const bool listed = std::any_of(std::begin(table), std::end(table), [&](const Count& c) {
          return c.k == k && c.delta == delta && c.big_m == big_m;
        });
        if (!listed && pi_k_delta(k, delta, big_m) != 0) ++zero_failures;
      }
    }
  }
  expect("unlisted counts vanish", zero_failures == 0, std::to_string(zero_failures) + " nonzero");

  expect("pi_3^(2) polynomial", pi_as_n_polynomial(3, 2) == NPoly({0, 1}), pi_as_n_polynomial(3, 2).str());
  expect("pi_4^(1) polynomial", pi_as_n_polynomial(4, 1) == NPoly({0, -1, 1}), pi_as_n_polynomial(4, 1).str());
  expect("pi_3^(2) total on Q^3", pi_m_M(Dim(3), 3, 2).total() == 3 && pi_m_M(Dim(3), 3, 2)[1] == 1);
  expect("pi_4^(1) total on Q^4", pi_m_M(Dim(4), 4, 1).total() == 12 && pi_m_M(Dim(4), 4, 1)[0] == 12);

  bool unique = true;
  bool all_but_long = true;
  for (int m = 2; m <= 8; ++m) {
    const auto laces = enumerate_laces(m, 1);
    unique = unique && laces.size() == 1 && laces[0].edges() == std::vector<EdgeST>{{0, m}};
    const auto compat = compatible_edges(laces[0]);
    all_but_long = all_but_long && static_cast<int>(compat.size()) == m * (m + 1) / 2 - 1;
  }
  expect("single-edge lace is unique", unique);
  expect("single-edge lace admits every other edge", all_but_long);

  bool intervals = true;
  for (int m = 2; m <= 6; ++m) {
    for (int big_m = 1; big_m < m; ++big_m) {
      for (const auto& lace : enumerate_laces(m, big_m)) {
        const auto compat = compatible_edges(lace);
        for (const auto& part : lace.subintervals()) {
          for (int s = part.s; s <= part.t; ++s) {
            for (int t = s + 1; t <= part.t; ++t) {
              const EdgeST e{s, t};
              if (lace.graph().contains(e)) continue;
              intervals = intervals && std::find(compat.begin(), compat.end(), e) != compat.end();
            }
          }
        }
      }
    }
  }
  expect("edges inside one subinterval are compatible", intervals);

  const auto counts = count_saw(Dim(5), 4);
  expect("c_0..c_4 on Q^5", std::vector<BigInt>(counts.coefficients().begin(), counts.coefficients().end()) ==
                                V{1, 5, 20, 80, 300});

  const auto f0 = bootstrap_diagnostics(count_saw_by_endpoint(Dim(3), full_steps(Dim(3))), Rational(0));
  expect("bootstrap at z=0", f0.f1 == 0 && f0.f2 == 1 && f0.f3 == 0,
         to_string(f0.f1) + "," + to_string(f0.f2) + "," + to_string(f0.f3));
  return report;
}

}  // namespace cubesaw::cli
