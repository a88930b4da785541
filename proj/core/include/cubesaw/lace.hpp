#pragma once

// Interval graphs, laces, compatible edges, and the lace-expansion
// coefficients pi_m^{(M)}(x) computed by exact enumeration.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cubesaw/cube.hpp"
#include "cubesaw/npoly.hpp"
#include "cubesaw/numeric.hpp"
#include "cubesaw/saw.hpp"

namespace cubesaw {

/// An edge st of an interval graph, s < t.
struct EdgeST {
  int s = 0;
  int t = 0;

  auto operator<=>(const EdgeST&) const = default;
};

/// A set of edges on the integer interval [a, b].
class IntervalGraph {
 public:
  IntervalGraph(int a, int b, std::vector<EdgeST> edges = {});

  int a() const noexcept { return a_; }
  int b() const noexcept { return b_; }
  /// Sorted, without duplicates.
  const std::vector<EdgeST>& edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool contains(EdgeST e) const;

  IntervalGraph with(EdgeST e) const;
  IntervalGraph without(EdgeST e) const;

  friend bool operator==(const IntervalGraph&, const IntervalGraph&) = default;

 private:
  int a_;
  int b_;
  std::vector<EdgeST> edges_;
};

/// A minimally connected interval graph. Edges are kept in lace order
/// s_1 t_1, ..., s_M t_M with s_1 = a and t_M = b.
class Lace {
 public:
  /// Throws DomainError unless the edges form a lace on [a, b].
  Lace(int a, int b, std::vector<EdgeST> edges);

  int a() const noexcept { return graph_.a(); }
  int b() const noexcept { return graph_.b(); }
  /// Number of edges M.
  int size() const noexcept { return static_cast<int>(graph_.size()); }
  const std::vector<EdgeST>& edges() const noexcept { return graph_.edges(); }
  const IntervalGraph& graph() const noexcept { return graph_; }

  /// The 2M-1 closed subintervals [s_1,s_2], [s_2,t_1], [t_1,s_3], ..., [t_{M-1},t_M].
  std::vector<EdgeST> subintervals() const;

  friend bool operator==(const Lace&, const Lace&) = default;

 private:
  IntervalGraph graph_;
};

/// Both a and b are edge endpoints and every real c in (a, b) lies strictly
/// inside some edge. This is interval covering, not path connectivity.
bool is_connected_graph(const IntervalGraph& g);

/// Connected, and removing any single edge disconnects it.
bool is_lace(const IntervalGraph& g);

/// The lace L_Gamma selected from a connected graph by the max/min
/// prescription. Throws DomainError for disconnected input.
Lace lace_prescription(const IntervalGraph& g);

/// C(L): edges st not in L with lace_prescription(L + st) == L, found by
/// testing every candidate edge on [a, b].
std::vector<EdgeST> compatible_edges(const Lace& lace);

/// All laces on [0, m] with exactly M edges, generated from the endpoint
/// ordering a = s_1 < s_2, s_{l+1} < t_l <= s_{l+2}, s_M < t_{M-1} < t_M = b.
std::vector<Lace> enumerate_laces(int m, int big_m);

/// Largest interval length supported by the bitmask kernels (m(m+1)/2 edges
/// must fit in 64 bits).
inline constexpr int kMaxLaceInterval = 10;

/// A function on Q^N that depends only on |x|, stored per weight class.
class WeightProfile {
 public:
  WeightProfile(Dim dim, std::vector<BigInt> by_weight);
  static WeightProfile zero(Dim dim);

  Dim dim() const noexcept { return dim_; }
  const BigInt& operator[](int weight) const { return by_weight_.at(weight); }
  std::span<const BigInt> by_weight() const noexcept { return by_weight_; }

  /// sum_x f(x) = sum_w binom(N, w) f(weight w).
  BigInt total() const;
  IntCubeFn field() const;

  WeightProfile& operator+=(const WeightProfile& o);
  WeightProfile& operator-=(const WeightProfile& o);
  friend bool operator==(const WeightProfile&, const WeightProfile&) = default;

 private:
  Dim dim_;
  std::vector<BigInt> by_weight_;
};

/// pi_m^{(M)}(x): (walk, lace) pairs where the walk meets itself at every
/// lace edge and avoids itself on every compatible edge. Zero when M >= m.
WeightProfile pi_m_M(Dim dim, int m, int big_m, const EnumerationOptions& options = {});

/// pi_m^{(M)} for M = 1 .. m-1 from a single pass over the walks; entry
/// [M-1] holds M.
std::vector<WeightProfile> pi_m_all(Dim dim, int m, const EnumerationOptions& options = {});

/// pi_m(x) = sum_M (-1)^M pi_m^{(M)}(x).
WeightProfile pi_alternating(Dim dim, int m, const EnumerationOptions& options = {});

/// pi_m(x) straight from the connected-graph sum: every walk contributes
/// sum over connected Gamma within its intersection pairs of (-1)^{|Gamma|}.
/// Shares no code with the lace route.
WeightProfile pi_direct_oracle(Dim dim, int m, const EnumerationOptions& options = {});

struct RecursionViolation {
  int n;
  int weight;
  BigInt lhs;
  BigInt rhs;
};

struct RecursionReport {
  bool ok = true;
  int max_steps = 0;
  std::optional<RecursionViolation> violation;
};

/// Checks c_n(x) = N (D * c_{n-1})(x) + sum_{m=2}^n (pi_m * c_{n-m})(x)
/// exactly for all n <= n_max and all x.
RecursionReport verify_recursion(Dim dim, int n_max, const EnumerationOptions& options = {});

/// pi_{k,delta}^{(M)}: k-step lace graphs using exactly delta coordinates,
/// each new coordinate introduced in the order 1, 2, ..., delta.
/// Independent of N.
BigInt pi_k_delta(int k, int delta, int big_m);

/// Same count with the compatible-edge avoidance replaced by mutual
/// avoidance of the grouped subwalks ([123] for M=2; [1234],[345] for M=3;
/// [1234],[3456],[567] for M=4). Only defined for M <= 4.
BigInt pi_k_delta_by_subwalk_pattern(int k, int delta, int big_m);

/// pi_k^{(M)} = sum_x pi_k^{(M)}(x) = sum_delta pi_{k,delta}^{(M)} N(N-1)...(N-delta+1).
NPoly pi_as_n_polynomial(int k, int big_m);

/// pi_m^{(2)}(x) <= sum_{m1+m2+m3=m} c_{m1}(x) c_{m2}(x) c_{m3}(x), checked
/// on every weight class.
bool check_pi2_bound(Dim dim, int m, const EnumerationOptions& options = {});

std::string to_string(const Lace& lace);

}  // namespace cubesaw
