#include "monoext/discrete_solver.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>

#include "monoext/error.hpp"

namespace monoext {

ValueScale::ValueScale(std::vector<Rational> values) : values_(std::move(values)) {
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (!(values_[i - 1] < values_[i])) {
      throw NotIncreasing("scale values must be strictly increasing (positions " + std::to_string(i) + " and " +
                          std::to_string(i + 1) + ")");
    }
  }
}

ValueScale ValueScale::reversed() const {
  std::vector<Rational> out;
  out.reserve(values_.size());
  for (auto it = values_.rbegin(); it != values_.rend(); ++it) out.push_back(-*it);
  return ValueScale(std::move(out));
}

Rational query_sum(const QuerySet& query, const MonotoneBijection& f, const ValueScale& scale) {
  Rational total = 0;
  for (Element b : query) total += f.value(b, scale);
  return total;
}

namespace {

void check_problem(const Poset& poset, const ValueScale& scale) {
  if (scale.size() != poset.size()) {
    throw ScaleSizeMismatch("scale has " + std::to_string(scale.size()) + " values but the poset has " +
                            std::to_string(poset.size()) + " elements");
  }
}

void check_permutation(const Poset& poset, const QuerySet& query, const Permutation& perm) {
  if (!is_admissible(poset, query, perm)) {
    throw InvalidPermutation("permutation is not a linear extension of the order induced on the query");
  }
}

// Branch and bound over orderings of the query. Each step adds the family set
// (down-set or up-set) of the chosen element to a running union U and pays
// weights[|U| - 1]; weights are increasing, so the union sizes along any
// completion give an optimistic bound.
class OrderingSearch {
 public:
  OrderingSearch(std::vector<ElementSet> sets, std::vector<std::vector<bool>> must_precede,
                 std::vector<Rational> weights, std::vector<std::size_t> candidate_order, std::size_t cap)
      : sets_(std::move(sets)),
        must_precede_(std::move(must_precede)),
        weights_(std::move(weights)),
        order_(std::move(candidate_order)),
        cap_(cap) {
    const std::size_t n = sets_.size();
    used_.assign(n, false);
    pending_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (must_precede_[a][b]) ++pending_[b];
      }
    }
    seq_.reserve(n);
  }

  // Returns the best objective and the ordering (query positions) attaining it.
  std::pair<Rational, Permutation> run() {
    const std::size_t universe = weights_.size();
    dfs(ElementSet(universe), Rational(0));
    return {best_, best_seq_};
  }

 private:
  Rational completion_bound(std::size_t union_size) const {
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      if (!used_[i]) sizes.push_back(sets_[i].size());
    }
    std::sort(sizes.begin(), sizes.end());
    Rational bound = 0;
    for (std::size_t j = 0; j < sizes.size(); ++j) {
      const std::size_t idx = std::max(union_size + j + 1, sizes[j]);
      bound += weights_[idx - 1];
    }
    return bound;
  }

  void dfs(const ElementSet& covered, const Rational& partial) {
    if (seq_.size() == sets_.size()) {
      if (leaves_ == cap_) throw CapExceeded(cap_);
      ++leaves_;
      if (!found_ || partial < best_) {
        best_ = partial;
        best_seq_ = seq_;
        found_ = true;
      }
      return;
    }
    if (found_ && partial + completion_bound(covered.size()) >= best_) return;

    for (std::size_t cand : order_) {
      if (used_[cand] || pending_[cand] != 0) continue;
      used_[cand] = true;
      for (std::size_t b = 0; b < sets_.size(); ++b) {
        if (must_precede_[cand][b]) --pending_[b];
      }
      seq_.push_back(cand);

      ElementSet next = covered | sets_[cand];
      dfs(next, partial + weights_[next.size() - 1]);

      seq_.pop_back();
      for (std::size_t b = 0; b < sets_.size(); ++b) {
        if (must_precede_[cand][b]) ++pending_[b];
      }
      used_[cand] = false;
    }
  }

  std::vector<ElementSet> sets_;
  std::vector<std::vector<bool>> must_precede_;
  std::vector<Rational> weights_;
  std::vector<std::size_t> order_;
  std::size_t cap_;

  std::vector<bool> used_;
  std::vector<std::size_t> pending_;
  Permutation seq_;
  std::size_t leaves_ = 0;
  bool found_ = false;
  Rational best_;
  Permutation best_seq_;
};

std::vector<std::size_t> positions_by_index(const QuerySet& query) {
  std::vector<std::size_t> order(query.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return query[a] < query[b]; });
  return order;
}

BoundResult make_result(const Poset& poset, const ValueScale& scale, const QuerySet& query, Permutation perm,
                        Rational objective, Mode mode) {
  BoundResult r;
  r.objective = std::move(objective);
  r.witness_fn = build_witness(poset, scale, query, perm, mode);
  r.per_node_values.reserve(perm.size());
  for (std::size_t p : perm) r.per_node_values.push_back(r.witness_fn.value(query[p], scale));
  r.witness_perm = std::move(perm);
  return r;
}

}  // namespace

Rational conditional_min(const Poset& poset, const ValueScale& scale, const QuerySet& query,
                         const Permutation& perm) {
  check_problem(poset, scale);
  check_permutation(poset, query, perm);
  ElementSet covered(poset.size());
  Rational total = 0;
  for (std::size_t p : perm) {
    covered |= poset.down_set(query[p]);
    total += scale.at_rank(covered.size());
  }
  return total;
}

Rational conditional_max(const Poset& poset, const ValueScale& scale, const QuerySet& query,
                         const Permutation& perm) {
  check_problem(poset, scale);
  check_permutation(poset, query, perm);
  const std::size_t n_elems = poset.size();
  ElementSet covered(n_elems);
  Rational total = 0;
  for (auto it = perm.rbegin(); it != perm.rend(); ++it) {
    covered |= poset.up_set(query[*it]);
    total += scale.at_rank(n_elems - covered.size() + 1);
  }
  return total;
}

MonotoneBijection build_witness(const Poset& poset, const ValueScale& scale, const QuerySet& query,
                                const Permutation& perm, Mode mode) {
  check_problem(poset, scale);
  check_permutation(poset, query, perm);
  const std::size_t n_elems = poset.size();
  std::vector<std::size_t> ranks(n_elems, 0);
  ElementSet covered(n_elems);

  auto assign_block = [&](const ElementSet& block, std::size_t first_rank) {
    std::size_t r = first_rank;
    for (Element e : first_linear_extension(poset, block.elements())) ranks[e] = r++;
  };

  ElementSet all(n_elems);
  for (Element e = 0; e < n_elems; ++e) all.insert(e);

  if (mode == Mode::min) {
    std::size_t next = 1;
    for (std::size_t p : perm) {
      ElementSet block = poset.down_set(query[p]) - covered;
      covered |= block;
      assign_block(block, next);
      next += block.size();
    }
    assign_block(all - covered, next);
  } else {
    std::size_t top = n_elems;
    for (auto it = perm.rbegin(); it != perm.rend(); ++it) {
      ElementSet block = poset.up_set(query[*it]) - covered;
      covered |= block;
      assign_block(block, top - block.size() + 1);
      top -= block.size();
    }
    assign_block(all - covered, 1);
  }
  return MonotoneBijection(std::move(ranks));
}

BoundResult solve_min(const Poset& poset, const ValueScale& scale, const QuerySet& query, std::size_t cap) {
  check_problem(poset, scale);
  if (query.empty()) throw EmptyQuery("query set must be nonempty");
  const std::size_t n = query.size();
  std::vector<ElementSet> sets;
  sets.reserve(n);
  for (Element b : query) sets.push_back(poset.down_set(b));
  std::vector<std::vector<bool>> prec(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) prec[a][b] = poset.less(query[a], query[b]);
  }
  OrderingSearch search(std::move(sets), std::move(prec), scale.values(), positions_by_index(query), cap);
  auto [objective, perm] = search.run();
  return make_result(poset, scale, query, std::move(perm), std::move(objective), Mode::min);
}

BoundResult solve_max(const Poset& poset, const ValueScale& scale, const QuerySet& query, std::size_t cap) {
  check_problem(poset, scale);
  if (query.empty()) throw EmptyQuery("query set must be nonempty");
  const std::size_t n = query.size();
  std::vector<ElementSet> sets;
  sets.reserve(n);
  for (Element b : query) sets.push_back(poset.up_set(b));
  // Top-down: larger elements are placed first.
  std::vector<std::vector<bool>> prec(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) prec[a][b] = poset.less(query[b], query[a]);
  }
  // Maximizing Σ ξ_{N-|U|+1} is minimizing Σ w_{|U|} with w_i = −ξ_{N-i+1}.
  OrderingSearch search(std::move(sets), std::move(prec), scale.reversed().values(), positions_by_index(query),
                        cap);
  auto [neg_objective, top_down] = search.run();
  Permutation perm(top_down.rbegin(), top_down.rend());
  return make_result(poset, scale, query, std::move(perm), -neg_objective, Mode::max);
}

BoundResult solve(const Poset& poset, const ValueScale& scale, const QuerySet& query, Mode mode, std::size_t cap) {
  return mode == Mode::min ? solve_min(poset, scale, query, cap) : solve_max(poset, scale, query, cap);
}

ReversedProblem reverse_reduce(const Poset& poset, const ValueScale& scale) {
  check_problem(poset, scale);
  return ReversedProblem{poset.reversed(), scale.reversed()};
}

BoundResult solve_max_by_reversal(const Poset& poset, const ValueScale& scale, const QuerySet& query,
                                  std::size_t cap) {
  auto reduced = reverse_reduce(poset, scale);
  BoundResult dual = solve_min(reduced.poset, reduced.scale, query, cap);
  Permutation perm(dual.witness_perm.rbegin(), dual.witness_perm.rend());
  return make_result(poset, scale, query, std::move(perm), -dual.objective, Mode::max);
}

MinMax chain_closed_form(const Poset& poset, const ValueScale& scale, const QuerySet& query) {
  check_problem(poset, scale);
  if (query.empty()) throw EmptyQuery("query set must be nonempty");
  for (std::size_t k = 0; k + 1 < query.size(); ++k) {
    if (!poset.less(query[k], query[k + 1])) {
      throw NotAChain("'" + poset.label(query[k]) + "' is not below '" + poset.label(query[k + 1]) + "'");
    }
  }
  const std::size_t n_elems = poset.size();
  MinMax out{0, 0};
  for (Element b : query) {
    out.min += scale.at_rank(poset.down_set(b).size());
    out.max += scale.at_rank(n_elems - poset.up_set(b).size() + 1);
  }
  return out;
}

namespace {

void check_disjoint_sorted(const Poset& poset, const QuerySet& query, const std::vector<ElementSet>& sets,
                           const char* kind) {
  for (std::size_t k = 0; k < sets.size(); ++k) {
    if (k + 1 < sets.size() && sets[k].size() > sets[k + 1].size()) {
      throw PreconditionViolated(std::string(kind) + " sizes decrease between '" + poset.label(query[k]) +
                                 "' and '" + poset.label(query[k + 1]) + "'");
    }
    for (std::size_t j = k + 1; j < sets.size(); ++j) {
      if (sets[k].intersects(sets[j])) {
        throw PreconditionViolated(std::string(kind) + "s of '" + poset.label(query[k]) + "' and '" +
                                   poset.label(query[j]) + "' intersect");
      }
    }
  }
}

}  // namespace

Rational disjoint_closed_form_min(const Poset& poset, const ValueScale& scale, const QuerySet& query) {
  check_problem(poset, scale);
  if (query.empty()) throw EmptyQuery("query set must be nonempty");
  std::vector<ElementSet> sets;
  for (Element b : query) sets.push_back(poset.down_set(b));
  check_disjoint_sorted(poset, query, sets, "down-set");
  Rational total = 0;
  std::size_t cum = 0;
  for (const auto& s : sets) {
    cum += s.size();
    total += scale.at_rank(cum);
  }
  return total;
}

Rational disjoint_closed_form_max(const Poset& poset, const ValueScale& scale, const QuerySet& query) {
  check_problem(poset, scale);
  if (query.empty()) throw EmptyQuery("query set must be nonempty");
  std::vector<ElementSet> sets;
  for (Element b : query) sets.push_back(poset.up_set(b));
  check_disjoint_sorted(poset, query, sets, "up-set");
  Rational total = 0;
  std::size_t cum = 0;
  for (const auto& s : sets) {
    cum += s.size();
    total += scale.at_rank(poset.size() - cum + 1);
  }
  return total;
}

ValueScale scale_from_m(const MonotoneMap1D& m, std::size_t n) {
  if (n == 0) throw InvalidGrid("grid size must be at least 1");
  require_bijection(m, "m");
  const std::size_t count = n * n;
  std::vector<Rational> values;
  values.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    if (m.kind() == MonotoneMap1D::Kind::identity) {
      Rational v(static_cast<unsigned long>(i), static_cast<unsigned long>(count));
      v.canonicalize();
      values.push_back(std::move(v));
    } else {
      values.push_back(rational_from_double(m.inverse(static_cast<double>(i) / static_cast<double>(count))));
    }
  }
  return ValueScale(std::move(values));
}

}  // namespace monoext
