#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "monoext/discrete_solver.hpp"
#include "monoext/poset.hpp"

namespace monoext {

/// Ground truth by enumerating every monotone bijection (linear extension).
/// Independent of the formula path in discrete_solver: it only uses the
/// poset and the value types.
struct BruteForceResult {
  BoundResult min;
  BoundResult max;
  std::size_t count = 0;  ///< number of monotone bijections
};

/// Throws EmptyQuery, ScaleSizeMismatch, CapExceeded.
BruteForceResult brute_min_max(const Poset& poset, const ValueScale& scale, const QuerySet& query,
                               std::size_t cap = kDefaultEnumerationCap);

struct MonotonicityCheck {
  bool ok = true;
  /// Elements (a, b) with a ≺ b but f(a) > f(b) (or equal values).
  std::optional<std::pair<Element, Element>> violating_pair;
  std::string reason;

  explicit operator bool() const { return ok; }
};

/// True iff f is a bijection onto {ξ_1..ξ_N} and order-preserving.
MonotonicityCheck check_monotone_bijection(const Poset& poset, const ValueScale& scale, const MonotoneBijection& f);
/// Same for an assignment of scale values; a value outside the scale fails.
MonotonicityCheck check_monotone_bijection(const Poset& poset, const ValueScale& scale,
                                           std::span<const Rational> values);

/// f with the values at α and β exchanged. Requires α, β incomparable and
/// with adjacent ranks. Throws NotIncomparable, NotAdjacentValues.
MonotoneBijection swap_adjacent(const Poset& poset, const MonotoneBijection& f, Element alpha, Element beta);

}  // namespace monoext
