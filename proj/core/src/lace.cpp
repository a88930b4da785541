#include "cubesaw/lace.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cubesaw/errors.hpp"
#include "cubesaw/parallel.hpp"

namespace cubesaw {

// ---------------------------------------------------------------------------
// Interval graphs and laces

IntervalGraph::IntervalGraph(int a, int b, std::vector<EdgeST> edges) : a_(a), b_(b), edges_(std::move(edges)) {
  if (a > b) throw DomainError("IntervalGraph: need a <= b");
  for (const auto& e : edges_) {
    if (e.s >= e.t) throw DomainError("IntervalGraph: edge needs s < t");
    if (e.s < a || e.t > b) throw DomainError("IntervalGraph: edge endpoint outside [a, b]");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool IntervalGraph::contains(EdgeST e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

IntervalGraph IntervalGraph::with(EdgeST e) const {
  auto edges = edges_;
  edges.push_back(e);
  return IntervalGraph(a_, b_, std::move(edges));
}

IntervalGraph IntervalGraph::without(EdgeST e) const {
  auto edges = edges_;
  edges.erase(std::remove(edges.begin(), edges.end(), e), edges.end());
  return IntervalGraph(a_, b_, std::move(edges));
}

bool is_connected_graph(const IntervalGraph& g) {
  const int a = g.a();
  const int b = g.b();
  if (a == b || g.edges().empty()) return false;
  bool a_used = false;
  bool b_used = false;
  for (const auto& e : g.edges()) {
    a_used = a_used || e.s == a;
    b_used = b_used || e.t == b;
  }
  if (!a_used || !b_used) return false;
  // Real points of (a, b) fall into two kinds: integers c and open unit
  // gaps (c, c+1). Check every one of them at half-integer resolution.
  for (int twice_c = 2 * a + 1; twice_c < 2 * b; ++twice_c) {
    bool covered = false;
    for (const auto& e : g.edges()) {
      if (2 * e.s < twice_c && twice_c < 2 * e.t) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

bool is_lace(const IntervalGraph& g) {
  if (!is_connected_graph(g)) return false;
  for (const auto& e : g.edges()) {
    if (is_connected_graph(g.without(e))) return false;
  }
  return true;
}

Lace::Lace(int a, int b, std::vector<EdgeST> edges) : graph_(a, b, std::move(edges)) {
  if (!is_lace(graph_)) throw DomainError("not a lace: " + cubesaw::to_string(*this));
}

std::vector<EdgeST> Lace::subintervals() const {
  const auto& e = edges();
  const int big_m = size();
  if (big_m == 1) return {e[0]};
  std::vector<int> points{e[0].s};
  for (int i = 1; i < big_m; ++i) {
    points.push_back(e[i].s);
    points.push_back(e[i - 1].t);
  }
  points.push_back(e[big_m - 1].t);
  std::vector<EdgeST> out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) out.push_back({points[i], points[i + 1]});
  return out;
}

Lace lace_prescription(const IntervalGraph& g) {
  if (!is_connected_graph(g)) throw DomainError("lace_prescription: graph is not connected");
  const int a = g.a();
  const int b = g.b();
  const auto& edges = g.edges();

  int t = a;
  for (const auto& e : edges) {
    if (e.s == a) t = std::max(t, e.t);
  }
  std::vector<EdgeST> lace{{a, t}};
  while (t != b) {
    int t_next = t;
    for (const auto& e : edges) {
      if (e.s < t) t_next = std::max(t_next, e.t);
    }
    if (t_next <= t) throw InvariantViolation("lace_prescription: no progress on a connected graph");
    int s_next = t_next;
    for (const auto& e : edges) {
      if (e.t == t_next) s_next = std::min(s_next, e.s);
    }
    lace.push_back({s_next, t_next});
    t = t_next;
  }
  return Lace(a, b, std::move(lace));
}

std::vector<EdgeST> compatible_edges(const Lace& lace) {
  std::vector<EdgeST> out;
  for (int s = lace.a(); s < lace.b(); ++s) {
    for (int t = s + 1; t <= lace.b(); ++t) {
      const EdgeST e{s, t};
      if (lace.graph().contains(e)) continue;
      if (lace_prescription(lace.graph().with(e)) == lace) out.push_back(e);
    }
  }
  return out;
}

namespace {

void extend_lace(int m, int big_m, std::vector<int>& s, std::vector<int>& t, std::vector<Lace>& out) {
  // s and t are 1-based in the ordering constraints; index 0 is unused.
  const int l = static_cast<int>(t.size());  // t_1 .. t_{l-1} chosen so far
  if (l == big_m - 1) {
    // Close with s_M < t_{M-1} < t_M = m.
    for (int t_last = s[big_m] + 1; t_last < m; ++t_last) {
      std::vector<EdgeST> edges;
      for (int i = 1; i < big_m - 1; ++i) edges.push_back({s[i], t[i]});
      edges.push_back({s[big_m - 1], t_last});
      edges.push_back({s[big_m], m});
      out.emplace_back(0, m, std::move(edges));
    }
    return;
  }
  // Choose t_l and s_{l+2} with s_{l+1} < t_l <= s_{l+2}.
  for (int tl = s[l + 1] + 1; tl < m; ++tl) {
    for (int next_s = tl; next_s < m; ++next_s) {
      t.push_back(tl);
      s.push_back(next_s);
      extend_lace(m, big_m, s, t, out);
      s.pop_back();
      t.pop_back();
    }
  }
}

}  // namespace

std::vector<Lace> enumerate_laces(int m, int big_m) {
  if (m < 1 || big_m < 1) throw DomainError("enumerate_laces: need m >= 1 and M >= 1");
  std::vector<Lace> out;
  if (big_m == 1) {
    out.emplace_back(0, m, std::vector<EdgeST>{{0, m}});
    return out;
  }
  for (int s2 = 1; s2 < m; ++s2) {
    std::vector<int> s{0, 0, s2};
    std::vector<int> t{0};
    extend_lace(m, big_m, s, t, out);
  }
  return out;
}

std::string to_string(const Lace& lace) {
  std::string out = "{";
  for (std::size_t i = 0; i < lace.edges().size(); ++i) {
    if (i) out += ",";
    out += "(" + std::to_string(lace.edges()[i].s) + "," + std::to_string(lace.edges()[i].t) + ")";
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Weight profiles

WeightProfile::WeightProfile(Dim dim, std::vector<BigInt> by_weight) : dim_(dim), by_weight_(std::move(by_weight)) {
  if (by_weight_.size() != static_cast<std::size_t>(dim.n() + 1)) {
    throw DomainError("WeightProfile: need N+1 entries");
  }
}

WeightProfile WeightProfile::zero(Dim dim) { return WeightProfile(dim, std::vector<BigInt>(dim.n() + 1, 0)); }

BigInt WeightProfile::total() const {
  BigInt t = 0;
  for (int w = 0; w <= dim_.n(); ++w) t += binomial(dim_.n(), w) * by_weight_[w];
  return t;
}

IntCubeFn WeightProfile::field() const { return IntCubeFn::radial(dim_, by_weight_); }

WeightProfile& WeightProfile::operator+=(const WeightProfile& o) {
  if (!(dim_ == o.dim_)) throw DomainError("WeightProfile dimension mismatch");
  for (std::size_t i = 0; i < by_weight_.size(); ++i) by_weight_[i] += o.by_weight_[i];
  return *this;
}

WeightProfile& WeightProfile::operator-=(const WeightProfile& o) {
  if (!(dim_ == o.dim_)) throw DomainError("WeightProfile dimension mismatch");
  for (std::size_t i = 0; i < by_weight_.size(); ++i) by_weight_[i] -= o.by_weight_[i];
  return *this;
}

// ---------------------------------------------------------------------------
// Bitmask kernels

namespace {

// Bit position of edge st on [0, m].
class EdgeIndex {
 public:
  explicit EdgeIndex(int m) : m_(m) {
    if (m < 1 || m > kMaxLaceInterval) {
      throw DomainError("interval length must lie in [1, " + std::to_string(kMaxLaceInterval) + "]");
    }
    int next = 0;
    for (int s = 0; s <= m; ++s) {
      for (int t = s + 1; t <= m; ++t) index_[s][t] = next++;
    }
  }
  std::uint64_t bit(int s, int t) const { return std::uint64_t{1} << index_[s][t]; }
  std::uint64_t mask(std::span<const EdgeST> edges) const {
    std::uint64_t r = 0;
    for (const auto& e : edges) r |= bit(e.s, e.t);
    return r;
  }
  int m() const { return m_; }

 private:
  int m_;
  std::array<std::array<int, kMaxLaceInterval + 1>, kMaxLaceInterval + 1> index_{};
};

struct LaceMasks {
  int big_m;
  std::uint64_t lace;
  std::uint64_t avoid;  // edges the walk must not close
};

std::vector<LaceMasks> lace_catalog(const EdgeIndex& index) {
  std::vector<LaceMasks> out;
  const int m = index.m();
  for (int big_m = 1; big_m < m; ++big_m) {
    for (const auto& lace : enumerate_laces(m, big_m)) {
      const auto compat = compatible_edges(lace);
      out.push_back({big_m, index.mask(lace.edges()), index.mask(compat)});
    }
  }
  return out;
}

std::uint64_t intersection_mask(const EdgeIndex& index, std::span<const std::uint64_t> pos) {
  std::uint64_t mask = 0;
  const int m = static_cast<int>(pos.size()) - 1;
  // Hypercube walks are bipartite, so only even separations can coincide.
  for (int t = 2; t <= m; ++t) {
    for (int s = t - 2; s >= 0; s -= 2) {
      if (pos[s] == pos[t]) mask |= index.bit(s, t);
    }
  }
  return mask;
}

BigInt to_big(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return r;
}

// Calls visit(positions) for every m-step walk starting 0 -> e_1. The N
// choices of the second step become parallel tasks; each task owns a slot.
template <typename Slot, typename Visit>
std::vector<Slot> for_each_walk_first_branch(Dim dim, int m, const EnumerationOptions& options, Visit visit,
                                             Slot init) {
  const long double estimate = std::pow(static_cast<long double>(dim.n()), m - 1);
  if (estimate > static_cast<long double>(options.budget.max_nodes)) {
    throw BudgetExceeded("walk enumeration for N=" + std::to_string(dim.n()) + ", m=" + std::to_string(m) +
                             " exceeds the node budget",
                         estimate, options.budget.max_nodes);
  }
  const int n_dim = dim.n();
  const std::size_t tasks = m >= 2 ? static_cast<std::size_t>(n_dim) : 1;
  std::vector<Slot> slots(tasks, init);
  parallel_for(tasks, [&](std::size_t task) {
    std::vector<std::uint64_t> pos(m + 1, 0);
    std::vector<int> step(m + 1, 0);
    pos[1] = 1;
    int first_free = 2;
    if (m >= 2) {
      step[2] = static_cast<int>(task);
      pos[2] = pos[1] ^ (std::uint64_t{1} << task);
      first_free = 3;
    }
    for (int i = first_free; i <= m; ++i) pos[i] = pos[i - 1] ^ 1;  // step[i] = 0
    while (true) {
      visit(slots[task], std::span<const std::uint64_t>(pos));
      // Odometer over steps first_free .. m.
      int i = m;
      while (i >= first_free && step[i] == n_dim - 1) {
        step[i] = 0;
        --i;
      }
      if (i < first_free) break;
      ++step[i];
      for (int j = i; j <= m; ++j) pos[j] = pos[j - 1] ^ (std::uint64_t{1} << step[j]);
    }
  });
  return slots;
}

// Rescales first-branch tallies to per-vertex values: by symmetry the N
// first-step branches contribute equally to each weight class.
std::vector<BigInt> branch_to_profile(Dim dim, std::span<const BigInt> branch_by_weight) {
  std::vector<BigInt> out(dim.n() + 1, 0);
  for (int w = 0; w <= dim.n(); ++w) {
    BigInt class_total = branch_by_weight[w] * dim.n();
    BigInt size = binomial(dim.n(), w);
    if (!mpz_divisible_p(class_total.get_mpz_t(), size.get_mpz_t())) {
      throw InvariantViolation("weight-class total not divisible by class size");
    }
    mpz_divexact(out[w].get_mpz_t(), class_total.get_mpz_t(), size.get_mpz_t());
  }
  return out;
}

void require_pi_args(int m) {
  if (m < 2) throw DomainError("pi_m needs m >= 2");
  if (m > kMaxLaceInterval) throw DomainError("pi_m supports m <= " + std::to_string(kMaxLaceInterval));
}

}  // namespace

std::vector<WeightProfile> pi_m_all(Dim dim, int m, const EnumerationOptions& options) {
  require_pi_args(m);
  const EdgeIndex index(m);
  const auto catalog = lace_catalog(index);
  const int n_dim = dim.n();

  using Tally = std::vector<std::vector<std::uint64_t>>;  // [M-1][weight]
  const Tally empty(m - 1, std::vector<std::uint64_t>(n_dim + 1, 0));
  auto slots = for_each_walk_first_branch<Tally>(
      dim, m, options,
      [&](Tally& tally, std::span<const std::uint64_t> pos) {
        const std::uint64_t hits = intersection_mask(index, pos);
        if (hits == 0) return;
        const int w = std::popcount(pos.back());
        for (const auto& lace : catalog) {
          if ((lace.lace & ~hits) == 0 && (lace.avoid & hits) == 0) ++tally[lace.big_m - 1][w];
        }
      },
      empty);

  std::vector<WeightProfile> out;
  for (int big_m = 1; big_m < m; ++big_m) {
    std::vector<BigInt> branch(n_dim + 1, 0);
    for (const auto& tally : slots) {
      for (int w = 0; w <= n_dim; ++w) branch[w] += to_big(tally[big_m - 1][w]);
    }
    out.emplace_back(dim, branch_to_profile(dim, branch));
  }
  return out;
}

WeightProfile pi_m_M(Dim dim, int m, int big_m, const EnumerationOptions& options) {
  require_pi_args(m);
  if (big_m < 1) throw DomainError("pi_m_M needs M >= 1");
  if (big_m >= m) return WeightProfile::zero(dim);
  return pi_m_all(dim, m, options)[big_m - 1];
}

WeightProfile pi_alternating(Dim dim, int m, const EnumerationOptions& options) {
  const auto parts = pi_m_all(dim, m, options);
  WeightProfile sum = WeightProfile::zero(dim);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    // M = i + 1, sign (-1)^M
    if (i % 2 == 0) {
      sum -= parts[i];
    } else {
      sum += parts[i];
    }
  }
  return sum;
}

WeightProfile pi_direct_oracle(Dim dim, int m, const EnumerationOptions& options) {
  require_pi_args(m);
  constexpr int kMaxPairs = 20;
  const std::uint64_t full_cover = ((std::uint64_t{1} << (2 * m)) - 1) & ~std::uint64_t{1};  // bits 1..2m-1
  const int n_dim = dim.n();

  using Tally = std::vector<long long>;  // signed, by weight
  auto slots = for_each_walk_first_branch<Tally>(
      dim, m, options,
      [&](Tally& tally, std::span<const std::uint64_t> pos) {
        std::array<std::uint64_t, kMaxPairs> cover{};
        int pairs = 0;
        for (int s = 0; s <= m; ++s) {
          for (int t = s + 1; t <= m; ++t) {
            if (pos[s] != pos[t]) continue;
            if (pairs == kMaxPairs) {
              throw BudgetExceeded("pi_direct_oracle: walk has more than 20 intersection pairs", pairs + 1, kMaxPairs);
            }
            // Half-integer points 2s+1 .. 2t-1 lie strictly inside (s, t).
            cover[pairs++] = ((std::uint64_t{1} << (2 * t)) - 1) & ~((std::uint64_t{1} << (2 * s + 1)) - 1);
          }
        }
        long long sum = 0;
        for (std::uint32_t subset = 1; subset < (std::uint32_t{1} << pairs); ++subset) {
          std::uint64_t covered = 0;
          for (int j = 0; j < pairs; ++j) {
            if (subset >> j & 1U) covered |= cover[j];
          }
          if ((covered & full_cover) == full_cover) sum += (std::popcount(subset) % 2) ? -1 : 1;
        }
        tally[std::popcount(pos.back())] += sum;
      },
      Tally(n_dim + 1, 0));

  std::vector<BigInt> branch(n_dim + 1, 0);
  for (const auto& tally : slots) {
    for (int w = 0; w <= n_dim; ++w) branch[w] += BigInt(static_cast<long>(tally[w]));
  }
  return WeightProfile(dim, branch_to_profile(dim, branch));
}

RecursionReport verify_recursion(Dim dim, int n_max, const EnumerationOptions& options) {
  if (n_max < 1) throw DomainError("verify_recursion: need n_max >= 1");
  const SawProfile c = count_saw_by_endpoint(dim, n_max, options);
  std::vector<IntCubeFn> c_field;
  for (int n = 0; n <= n_max; ++n) c_field.push_back(c.field(n));
  std::vector<IntCubeFn> pi_field;  // index m
  pi_field.reserve(n_max + 1);
  for (int m = 0; m <= n_max; ++m) {
    pi_field.push_back(m >= 2 ? pi_alternating(dim, m, options).field() : IntCubeFn(dim));
  }

  // N D as an integer field: the indicator of the unit vectors.
  IntCubeFn steps(dim);
  for (int i = 0; i < dim.n(); ++i) steps[Vertex{std::uint64_t{1} << i}] = 1;

  RecursionReport report;
  report.max_steps = n_max;
  for (int n = 1; n <= n_max; ++n) {
    IntCubeFn rhs = convolve(steps, c_field[n - 1]);
    for (int m = 2; m <= n; ++m) rhs += convolve(pi_field[m], c_field[n - m]);
    for (std::uint64_t x = 0; x < rhs.size(); ++x) {
      if (rhs.at(x) != c_field[n].at(x)) {
        report.ok = false;
        report.violation = RecursionViolation{n, std::popcount(x), c_field[n].at(x), rhs.at(x)};
        return report;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Universal counts

namespace {

// Every k-step walk that introduces coordinates in the order 1, 2, ... and
// ends up using exactly delta of them.
template <typename Visit>
void for_each_canonical_walk(int k, int delta, Visit visit) {
  std::vector<std::uint64_t> pos(k + 1, 0);
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (i > k) {
      if (used == delta) visit(std::span<const std::uint64_t>(pos));
      return;
    }
    // Remaining steps must still be able to introduce the missing coordinates.
    if (delta - used > k - i + 1) return;
    const int limit = std::min(used + 1, delta);
    for (int c = 0; c < limit; ++c) {
      pos[i] = pos[i - 1] ^ (std::uint64_t{1} << c);
      self(self, i + 1, std::max(used, c + 1));
    }
  };
  rec(rec, 1, 0);
}

void require_k_delta(int k, int delta, int big_m) {
  if (k < 2 || k > kMaxLaceInterval) throw DomainError("pi_k_delta: k must lie in [2, 10]");
  if (delta < 1) throw DomainError("pi_k_delta: delta must be >= 1");
  if (big_m < 1) throw DomainError("pi_k_delta: M must be >= 1");
}

BigInt count_canonical(int k, int delta, int big_m, const std::vector<LaceMasks>& laces, const EdgeIndex& index) {
  std::uint64_t count = 0;
  for_each_canonical_walk(k, delta, [&](std::span<const std::uint64_t> pos) {
    const std::uint64_t hits = intersection_mask(index, pos);
    if (hits == 0) return;
    for (const auto& lace : laces) {
      if (lace.big_m == big_m && (lace.lace & ~hits) == 0 && (lace.avoid & hits) == 0) ++count;
    }
  });
  return to_big(count);
}

}  // namespace

BigInt pi_k_delta(int k, int delta, int big_m) {
  require_k_delta(k, delta, big_m);
  if (big_m >= k || delta >= k) return 0;
  const EdgeIndex index(k);
  return count_canonical(k, delta, big_m, lace_catalog(index), index);
}

BigInt pi_k_delta_by_subwalk_pattern(int k, int delta, int big_m) {
  require_k_delta(k, delta, big_m);
  if (big_m > 4) throw DomainError("subwalk pattern is only defined for M <= 4");
  if (big_m >= k || delta >= k) return 0;
  const EdgeIndex index(k);
  std::vector<LaceMasks> laces;
  for (const auto& lace : enumerate_laces(k, big_m)) {
    const auto parts = lace.subintervals();
    // Groups of consecutive subwalks (1-based) that must avoid each other.
    std::vector<std::pair<int, int>> groups;
    const int count = static_cast<int>(parts.size());  // 2M - 1
    if (big_m <= 2) {
      groups.push_back({1, count});
    } else {
      for (int first = 1; first + 3 <= count - 1; first += 2) groups.push_back({first, first + 3});
      groups.push_back({count - 2, count});
    }
    std::uint64_t avoid = 0;
    for (auto [first, last] : groups) {
      const int lo = parts[first - 1].s;
      const int hi = parts[last - 1].t;
      for (int s = lo; s <= hi; ++s) {
        for (int t = s + 1; t <= hi; ++t) avoid |= index.bit(s, t);
      }
    }
    const std::uint64_t lace_mask = index.mask(lace.edges());
    laces.push_back({big_m, lace_mask, avoid & ~lace_mask});
  }
  return count_canonical(k, delta, big_m, laces, index);
}

NPoly pi_as_n_polynomial(int k, int big_m) {
  NPoly p;
  for (int delta = 1; delta < k; ++delta) {
    const BigInt count = pi_k_delta(k, delta, big_m);
    if (count != 0) p += NPoly::falling_factorial(static_cast<unsigned>(delta)) * count;
  }
  return p;
}

bool check_pi2_bound(Dim dim, int m, const EnumerationOptions& options) {
  const WeightProfile pi2 = pi_m_M(dim, m, 2, options);
  const SawProfile c = count_saw_by_endpoint(dim, m, options);
  for (int w = 0; w <= dim.n(); ++w) {
    BigInt bound = 0;
    for (int m1 = 1; m1 <= m - 2; ++m1) {
      for (int m2 = 1; m1 + m2 <= m - 1; ++m2) {
        const int m3 = m - m1 - m2;
        bound += c.entry(m1, w) * c.entry(m2, w) * c.entry(m3, w);
      }
    }
    if (pi2[w] > bound) return false;
  }
  return true;
}

}  // namespace cubesaw
