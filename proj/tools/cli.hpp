#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cubesaw::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kBudget = 3 };

struct RunConfig {
  std::string subcommand;
  std::optional<int> n_dim;
  std::optional<int> max_steps;
  std::string lambda = "1";
  std::string p = "1/4";
  std::optional<int> order;
  std::optional<int> big_m;
  std::optional<int> delta;
  std::optional<std::string> z;
  std::string target;
  std::string suite;
  /// 0 keeps the library default (hardware concurrency or CUBESAW_THREADS).
  unsigned threads = 0;
  std::string scalar_mode = "exact";
  std::string format = "json";
  std::string out;
  std::optional<std::uint64_t> budget;
};

/// Dispatches a validated configuration. Results go to `out` (or the file
/// named by config.out); errors go to `err` as one JSON line.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and runs them.
int run_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubesaw::cli
