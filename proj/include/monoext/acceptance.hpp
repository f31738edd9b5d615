#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "monoext/discrete_solver.hpp"
#include "monoext/poset.hpp"

namespace monoext::acceptance {

using Rng = std::mt19937_64;

/// A discrete problem: poset, scale and query set.
struct Instance {
  std::string name;
  Poset poset;
  ValueScale scale;
  QuerySet query;
};

/// DAG on n elements: a hidden random order, each forward pair joined with
/// probability `density`. Labels are e0, e1, ...
Poset random_poset(Rng& rng, std::size_t n, double density);
/// rows × cols grid labelled "(i,j)" with i the column, j the row.
Poset rect_grid(std::size_t cols, std::size_t rows, GridOrder order);
/// Strictly increasing scale of exact rationals with random gaps.
ValueScale random_scale(Rng& rng, std::size_t n);
/// Nonempty random subset in random order.
QuerySet random_query(Rng& rng, const Poset& poset);
/// Uniformly chosen next element among the minimal ones at every step.
MonotoneBijection random_linear_extension(Rng& rng, const Poset& poset);

/// Random DAGs with N <= 8 plus the 2×2, 2×3 and 3×3 grids under both orders,
/// each with random scales and queries.
std::vector<Instance> discrete_corpus(std::uint64_t seed, std::size_t random_count = 520);

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct Options {
  std::uint64_t seed = 20240601;
  std::size_t mc_trials = 1'000'000;
};

CriterionResult run_criterion(int id, const Options& options = {});
std::vector<CriterionResult> run_all(const Options& options = {},
                                     const std::function<void(const CriterionResult&)>& on_result = {});

inline constexpr int kCriterionCount = 10;

/// "[PASS]  3  title  (detail, 0.12 s)".
std::string format_line(const CriterionResult& r);

}  // namespace monoext::acceptance
