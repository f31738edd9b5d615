#pragma once

#include <cstddef>
#include <vector>

#include "monoext/func1d.hpp"
#include "monoext/poset.hpp"
#include "monoext/rational.hpp"

namespace monoext {

/// Strictly increasing values ξ_1 < ... < ξ_N. Ranks are 1-based.
class ValueScale {
 public:
  /// Throws NotIncreasing.
  explicit ValueScale(std::vector<Rational> values);

  std::size_t size() const { return values_.size(); }
  /// ξ_rank, 1 <= rank <= N.
  const Rational& at_rank(std::size_t rank) const { return values_.at(rank - 1); }
  const std::vector<Rational>& values() const { return values_; }

  /// (−ξ_N, ..., −ξ_1): the scale with its order reversed.
  ValueScale reversed() const;

  friend bool operator==(const ValueScale&, const ValueScale&) = default;

 private:
  std::vector<Rational> values_;
};

/// Assignment of ranks 1..N to poset elements; value(α) = ξ_{rank(α)}.
/// Membership in F (bijective and order-preserving) is checked by
/// check_monotone_bijection, not enforced here.
class MonotoneBijection {
 public:
  MonotoneBijection() = default;
  explicit MonotoneBijection(std::vector<std::size_t> ranks) : ranks_(std::move(ranks)) {}

  std::size_t size() const { return ranks_.size(); }
  std::size_t rank(Element e) const { return ranks_.at(e); }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  const Rational& value(Element e, const ValueScale& scale) const { return scale.at_rank(rank(e)); }

  friend bool operator==(const MonotoneBijection&, const MonotoneBijection&) = default;

 private:
  std::vector<std::size_t> ranks_;
};

enum class Mode { min, max };

/// Optimal value of S(B, f) = Σ_k f(β_k) with a witness f attaining it.
struct BoundResult {
  Rational objective;
  /// Query positions ordered by increasing witness value.
  Permutation witness_perm;
  MonotoneBijection witness_fn;
  /// witness_fn(β_{π(k)}) for k = 1..n; strictly increasing.
  std::vector<Rational> per_node_values;
};

/// S(B, f).
Rational query_sum(const QuerySet& query, const MonotoneBijection& f, const ValueScale& scale);

/// min over f in F_π of S(B, f) = Σ_k ξ_{|T_{π,k}|}, T_{π,k} the union of the
/// down-sets of the first k elements of π.
/// Throws InvalidPermutation, ScaleSizeMismatch.
Rational conditional_min(const Poset& poset, const ValueScale& scale, const QuerySet& query,
                         const Permutation& perm);

/// max over f in F_π of S(B, f). π lists B by increasing value (the same
/// admissibility as conditional_min); the up-set unions are accumulated from
/// the top element down, so the k-th largest query element receives
/// ξ_{N − |U_k| + 1}, U_k the union of the up-sets of the k largest.
Rational conditional_max(const Poset& poset, const ValueScale& scale, const QuerySet& query,
                         const Permutation& perm);

/// Exact min / max of S(B, f) over all f in F by exhaustive branch and bound
/// over admissible orderings. Ties keep the first optimum in enumeration
/// order: lexicographic by canonical index, bottom-up for min and top-down
/// for max. Throws EmptyQuery, ScaleSizeMismatch, CapExceeded (when more
/// than `cap` search leaves would be visited).
BoundResult solve_min(const Poset& poset, const ValueScale& scale, const QuerySet& query,
                      std::size_t cap = kDefaultEnumerationCap);
BoundResult solve_max(const Poset& poset, const ValueScale& scale, const QuerySet& query,
                      std::size_t cap = kDefaultEnumerationCap);
BoundResult solve(const Poset& poset, const ValueScale& scale, const QuerySet& query, Mode mode,
                  std::size_t cap = kDefaultEnumerationCap);

/// A member of F_π attaining the conditional optimum: the blocks
/// T_{π,k} \ T_{π,k-1} receive consecutive ranks (from the top in max mode);
/// inside a block ranks follow the lexicographically first linear extension.
MonotoneBijection build_witness(const Poset& poset, const ValueScale& scale, const QuerySet& query,
                                const Permutation& perm, Mode mode);

/// Poset with reversed order and scale (−ξ_N, ..., −ξ_1); the query keeps its
/// element indices. max S on the original problem = −min S on this one.
struct ReversedProblem {
  Poset poset;
  ValueScale scale;
};
ReversedProblem reverse_reduce(const Poset& poset, const ValueScale& scale);

/// solve_max computed as the negated minimum of the reversed problem. The
/// witness is expressed on the original problem.
BoundResult solve_max_by_reversal(const Poset& poset, const ValueScale& scale, const QuerySet& query,
                                  std::size_t cap = kDefaultEnumerationCap);

struct MinMax {
  Rational min;
  Rational max;
};

/// Closed form when β_1 ≺ β_2 ≺ ... ≺ β_n (in query order). Throws NotAChain.
MinMax chain_closed_form(const Poset& poset, const ValueScale& scale, const QuerySet& query);

/// Closed form for pairwise disjoint down-sets listed with non-decreasing
/// sizes: min = Σ_k ξ_{|Π_1| + ... + |Π_k|}. Throws PreconditionViolated.
Rational disjoint_closed_form_min(const Poset& poset, const ValueScale& scale, const QuerySet& query);
/// Dual: pairwise disjoint up-sets with non-decreasing sizes,
/// max = Σ_k ξ_{N − (|Π^1| + ... + |Π^k|) + 1}.
Rational disjoint_closed_form_max(const Poset& poset, const ValueScale& scale, const QuerySet& query);

/// (m⁻¹(i/n²))_{i=1..n²}. Exact i/n² for the identity map; otherwise the
/// exact binary value of the computed double. Throws NotIncreasing.
ValueScale scale_from_m(const MonotoneMap1D& m, std::size_t n);

}  // namespace monoext
