#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubesaw/saw.hpp"

namespace cubesaw::cli {

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool ok() const;
};

/// Exact c_n(x) recursion for n <= max_steps (default 7) on the given N, or on
/// N = 2, 3, 4 when none is given.
SuiteReport verify_recursion_suite(std::optional<int> n_dim, std::optional<int> max_steps,
                                   const EnumerationOptions& options);
/// Lace resummation against the connected-graph sum, m = 2 .. max_steps (default 6).
SuiteReport verify_resummation_suite(std::optional<int> n_dim, std::optional<int> max_steps,
                                     const EnumerationOptions& options);
/// Walsh round trip, Parseval, convolution theorem and D^ on random fields.
SuiteReport verify_walsh_suite(std::optional<int> n_dim);
/// The constant-free inequalities on small cubes.
SuiteReport verify_inequalities_suite(std::optional<int> n_dim, const EnumerationOptions& options);
/// The fixed battery of published values.
SuiteReport verify_goldens_suite();

}  // namespace cubesaw::cli
