#include "cubesaw/saw.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <unordered_set>

#include "cubesaw/errors.hpp"
#include "cubesaw/parallel.hpp"

namespace cubesaw {

namespace {

// Visited-vertex sets. The bitset covers all V vertices; the hash set is for
// N > 25 where a V-bit array is too large.
class BitsetVisited {
 public:
  explicit BitsetVisited(Dim dim) : words_((dim.volume() + 63) / 64, 0) {}
  bool test(std::uint64_t v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
  void set(std::uint64_t v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void reset(std::uint64_t v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

 private:
  std::vector<std::uint64_t> words_;
};

class HashVisited {
 public:
  explicit HashVisited(Dim) {}
  bool test(std::uint64_t v) const { return set_.contains(v); }
  void set(std::uint64_t v) { set_.insert(v); }
  void reset(std::uint64_t v) { set_.erase(v); }

 private:
  std::unordered_set<std::uint64_t> set_;
};

constexpr int kBitsetMaxDim = 25;

using CountTable = std::vector<std::vector<std::uint64_t>>;  // [n][weight]

CountTable make_table(int n_max, int n_dim) {
  return CountTable(n_max + 1, std::vector<std::uint64_t>(n_dim + 1, 0));
}

template <typename Visited>
class Walker {
 public:
  Walker(Dim dim, int n_max, CountTable& counts) : n_dim_(dim.n()), n_max_(n_max), visited_(dim), counts_(counts) {}

  void run(const std::vector<std::uint64_t>& prefix) {
    for (auto v : prefix) visited_.set(v);
    descend(prefix.back(), static_cast<int>(prefix.size()) - 1);
  }

 private:
  void descend(std::uint64_t at, int depth) {
    ++counts_[depth][std::popcount(at)];
    if (depth == n_max_) return;
    for (int i = 0; i < n_dim_; ++i) {
      const std::uint64_t next = at ^ (std::uint64_t{1} << i);
      if (visited_.test(next)) continue;
      visited_.set(next);
      descend(next, depth + 1);
      visited_.reset(next);
    }
  }

  int n_dim_;
  int n_max_;
  Visited visited_;
  CountTable& counts_;
};

// Every self-avoiding prefix 0 -> e_1 -> ... of exactly `depth` steps.
void collect_prefixes(int n_dim, int depth, std::vector<std::uint64_t>& path,
                      std::vector<std::vector<std::uint64_t>>& out) {
  if (static_cast<int>(path.size()) - 1 == depth) {
    out.push_back(path);
    return;
  }
  const std::uint64_t at = path.back();
  for (int i = 0; i < n_dim; ++i) {
    const std::uint64_t next = at ^ (std::uint64_t{1} << i);
    bool seen = false;
    for (auto v : path) seen = seen || v == next;
    if (seen) continue;
    path.push_back(next);
    collect_prefixes(n_dim, depth, path, out);
    path.pop_back();
  }
}

template <typename Visited>
CountTable enumerate_first_branch(Dim dim, int n_max, int split_depth) {
  // Walks whose first step flips coordinate 1. Prefixes shorter than the
  // split depth are tallied while building the task list.
  CountTable total = make_table(n_max, dim.n());
  const int depth = std::max(1, std::min(split_depth, n_max));
  std::vector<std::vector<std::uint64_t>> tasks;
  for (int d = 1; d <= depth; ++d) {
    std::vector<std::uint64_t> path{0, 1};
    std::vector<std::vector<std::uint64_t>> level;
    collect_prefixes(dim.n(), d, path, level);
    if (d < depth) {
      for (const auto& p : level) ++total[d][std::popcount(p.back())];
    } else {
      tasks = std::move(level);
    }
  }

  std::vector<CountTable> partial(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) {
    partial[i] = make_table(n_max, dim.n());
    Walker<Visited> walker(dim, n_max, partial[i]);
    walker.run(tasks[i]);
  });
  for (const auto& table : partial) {
    for (int n = 0; n <= n_max; ++n) {
      for (int w = 0; w <= dim.n(); ++w) total[n][w] += table[n][w];
    }
  }
  return total;
}

BigInt to_big(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return r;
}

}  // namespace

SawProfile::SawProfile(Dim dim, int max_steps, std::vector<std::vector<BigInt>> counts_by_weight)
    : dim_(dim), max_steps_(max_steps), counts_(std::move(counts_by_weight)) {
  if (max_steps < 0 || counts_.size() != static_cast<std::size_t>(max_steps + 1)) {
    throw DomainError("SawProfile: row count does not match max_steps");
  }
  for (const auto& row : counts_) {
    if (row.size() != static_cast<std::size_t>(dim.n() + 1)) throw DomainError("SawProfile: row needs N+1 entries");
  }
}

BigInt SawProfile::total(int n) const {
  BigInt t = 0;
  for (int w = 0; w <= dim_.n(); ++w) t += binomial(dim_.n(), w) * entry(n, w);
  return t;
}

IntCubeFn SawProfile::field(int n) const { return IntCubeFn::radial(dim_, row(n)); }

SawSeries::SawSeries(Dim dim, std::vector<BigInt> coefficients) : dim_(dim), coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw DomainError("SawSeries: need at least c_0");
}

bool SawSeries::is_full() const noexcept { return max_steps() >= full_steps(dim_); }

SawSeries SawSeries::prefix(int n) const {
  if (n < 0 || n > max_steps()) throw DomainError("SawSeries::prefix out of range");
  return SawSeries(dim_, std::vector<BigInt>(coeffs_.begin(), coeffs_.begin() + n + 1));
}

int full_steps(Dim dim) {
  // V - 1 saturates at int range; only meaningful for small N anyway.
  if (dim.n() >= 31) return std::numeric_limits<int>::max();
  return static_cast<int>(dim.volume() - 1);
}

long double estimate_saw_nodes(Dim dim, int n_max) {
  // First step is fixed by symmetry; each later step has at most N-1 choices.
  const int depth = std::min(n_max, full_steps(dim));
  long double nodes = 1.0L;
  long double level = 1.0L;
  for (int n = 2; n <= depth; ++n) {
    level *= static_cast<long double>(dim.n() - 1);
    nodes += level;
  }
  return nodes;
}

SawProfile count_saw_by_endpoint(Dim dim, int n_max, const EnumerationOptions& options) {
  if (n_max < 0) throw DomainError("count_saw: n_max must be >= 0");
  const long double estimate = estimate_saw_nodes(dim, n_max);
  if (estimate > static_cast<long double>(options.budget.max_nodes)) {
    throw BudgetExceeded("self-avoiding walk enumeration for N=" + std::to_string(dim.n()) + ", n_max=" +
                             std::to_string(n_max) + " exceeds the node budget",
                         estimate, options.budget.max_nodes);
  }

  const int n_dim = dim.n();
  std::vector<std::vector<BigInt>> counts(n_max + 1, std::vector<BigInt>(n_dim + 1, 0));
  counts[0][0] = 1;
  if (n_max >= 1) {
    const CountTable branch = n_dim <= kBitsetMaxDim
                                  ? enumerate_first_branch<BitsetVisited>(dim, n_max, options.split_depth)
                                  : enumerate_first_branch<HashVisited>(dim, n_max, options.split_depth);
    for (int n = 1; n <= n_max; ++n) {
      for (int w = 0; w <= n_dim; ++w) {
        // The first-step stabiliser permutes each weight class transitively,
        // so the N branches contribute equally per class.
        BigInt class_total = to_big(branch[n][w]) * n_dim;
        BigInt size = binomial(n_dim, w);
        if (!mpz_divisible_p(class_total.get_mpz_t(), size.get_mpz_t())) {
          throw InvariantViolation("count_saw: weight-class total not divisible by class size");
        }
        mpz_divexact(counts[n][w].get_mpz_t(), class_total.get_mpz_t(), size.get_mpz_t());
      }
    }
  }
  return SawProfile(dim, n_max, std::move(counts));
}

SawSeries totals(const SawProfile& profile) {
  std::vector<BigInt> c;
  for (int n = 0; n <= profile.max_steps(); ++n) c.push_back(profile.total(n));
  return SawSeries(profile.dim(), std::move(c));
}

SawSeries count_saw(Dim dim, int n_max, const EnumerationOptions& options) {
  return totals(count_saw_by_endpoint(dim, n_max, options));
}

Rational susceptibility(const SawSeries& series, const Rational& z) {
  if (sgn(z) < 0) throw DomainError("susceptibility: z must be >= 0");
  return evaluate(series.coefficients(), z);
}

long double susceptibility(const SawSeries& series, long double z) {
  if (z < 0) throw DomainError("susceptibility: z must be >= 0");
  return evaluate(series.coefficients(), z);
}

Rational susceptibility(Dim dim, const Rational& z, std::optional<int> n_max, const EnumerationOptions& options) {
  return susceptibility(count_saw(dim, n_max.value_or(full_steps(dim)), options), z);
}

std::vector<Rational> two_point_by_weight(const SawProfile& profile, const Rational& z) {
  if (sgn(z) < 0) throw DomainError("two_point: z must be >= 0");
  std::vector<Rational> g(profile.dim().n() + 1);
  for (int w = 0; w <= profile.dim().n(); ++w) {
    Rational acc = 0;
    for (int n = profile.max_steps(); n >= 0; --n) acc = acc * z + Rational(profile.entry(n, w));
    g[w] = acc;
  }
  return g;
}

ExactCubeFn two_point(const SawProfile& profile, const Rational& z) {
  return ExactCubeFn::radial(profile.dim(), two_point_by_weight(profile, z));
}

Rational bubble(const SawProfile& profile, const Rational& z) {
  const auto g = two_point_by_weight(profile, z);
  Rational b = 0;
  for (int w = 0; w <= profile.dim().n(); ++w) b += Rational(binomial(profile.dim().n(), w)) * g[w] * g[w];
  return b;
}

long double bubble(const SawProfile& profile, long double z) {
  if (z < 0) throw DomainError("bubble: z must be >= 0");
  long double b = 0;
  for (int w = 0; w <= profile.dim().n(); ++w) {
    long double g = 0;
    for (int n = profile.max_steps(); n >= 0; --n) g = g * z + to_long_double(profile.entry(n, w));
    b += to_long_double(binomial(profile.dim().n(), w)) * g * g;
  }
  return b;
}

Rational z_chi_derivative(const SawSeries& series, const Rational& z) {
  Rational acc = 0;
  for (int n = series.max_steps(); n >= 0; --n) acc = acc * z + Rational(series[n] * (n + 1));
  return acc;
}

long double z_chi_derivative(const SawSeries& series, long double z) {
  long double acc = 0;
  for (int n = series.max_steps(); n >= 0; --n) acc = acc * z + to_long_double(series[n]) * (n + 1);
  return acc;
}

Rational expected_length(const SawSeries& series, const Rational& z) {
  return z_chi_derivative(series, z) / susceptibility(series, z);
}

long double expected_length(const SawSeries& series, long double z) {
  return z_chi_derivative(series, z) / susceptibility(series, z);
}

BigInt hamilton_path_count(Dim dim, const EnumerationOptions& options) {
  const int steps = full_steps(dim);
  return count_saw(dim, steps, options)[steps];
}

}  // namespace cubesaw
