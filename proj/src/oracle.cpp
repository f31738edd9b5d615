#include "monoext/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "monoext/error.hpp"

namespace monoext {

namespace {

BoundResult result_from_extension(const QuerySet& query, const ValueScale& scale, const std::vector<Element>& ext,
                                  const Rational& objective) {
  std::vector<std::size_t> ranks(ext.size());
  for (std::size_t r = 0; r < ext.size(); ++r) ranks[ext[r]] = r + 1;
  BoundResult out;
  out.objective = objective;
  out.witness_fn = MonotoneBijection(std::move(ranks));
  out.witness_perm.resize(query.size());
  std::iota(out.witness_perm.begin(), out.witness_perm.end(), 0);
  std::sort(out.witness_perm.begin(), out.witness_perm.end(), [&](auto a, auto b) {
    return out.witness_fn.rank(query[a]) < out.witness_fn.rank(query[b]);
  });
  for (std::size_t p : out.witness_perm) out.per_node_values.push_back(out.witness_fn.value(query[p], scale));
  return out;
}

}  // namespace

BruteForceResult brute_min_max(const Poset& poset, const ValueScale& scale, const QuerySet& query, std::size_t cap) {
  if (scale.size() != poset.size()) throw ScaleSizeMismatch("scale size differs from poset size");
  if (query.empty()) throw EmptyQuery("query set must be nonempty");

  std::vector<std::size_t> rank_of(poset.size());
  Rational best_min, best_max;
  std::vector<Element> arg_min, arg_max;
  std::size_t count = 0;
  std::map<std::vector<bool>, Rational> sums;

  for_each_linear_extension(
      poset,
      [&](const std::vector<Element>& ext) {
        for (std::size_t r = 0; r < ext.size(); ++r) rank_of[ext[r]] = r + 1;
        // S depends only on the set of ranks taken by the query.
        std::vector<bool> taken(poset.size() + 1, false);
        for (Element b : query) taken[rank_of[b]] = true;
        auto [it, fresh] = sums.try_emplace(std::move(taken));
        if (fresh) {
          for (Element b : query) it->second += scale.at_rank(rank_of[b]);
        }
        const Rational& s = it->second;
        if (count == 0 || s < best_min) {
          best_min = s;
          arg_min = ext;
        }
        if (count == 0 || s > best_max) {
          best_max = s;
          arg_max = ext;
        }
        ++count;
      },
      cap);

  BruteForceResult out;
  out.min = result_from_extension(query, scale, arg_min, best_min);
  out.max = result_from_extension(query, scale, arg_max, best_max);
  out.count = count;
  return out;
}

MonotonicityCheck check_monotone_bijection(const Poset& poset, const ValueScale& scale, const MonotoneBijection& f) {
  MonotonicityCheck check;
  const std::size_t n = poset.size();
  if (f.size() != n || scale.size() != n) {
    check.ok = false;
    check.reason = "size mismatch";
    return check;
  }
  std::vector<bool> hit(n + 1, false);
  for (Element e = 0; e < n; ++e) {
    const std::size_t r = f.rank(e);
    if (r < 1 || r > n || hit[r]) {
      check.ok = false;
      check.reason = "not a bijection onto the scale (element '" + poset.label(e) + "')";
      return check;
    }
    hit[r] = true;
  }
  for (Element b = 0; b < n; ++b) {
    for (Element a : poset.down_set(b).elements()) {
      if (a != b && f.rank(a) > f.rank(b)) {
        check.ok = false;
        check.violating_pair = std::make_pair(a, b);
        check.reason = "'" + poset.label(a) + "' precedes '" + poset.label(b) + "' but has a larger value";
        return check;
      }
    }
  }
  return check;
}

MonotonicityCheck check_monotone_bijection(const Poset& poset, const ValueScale& scale,
                                           std::span<const Rational> values) {
  if (values.size() != poset.size()) {
    MonotonicityCheck check;
    check.ok = false;
    check.reason = "size mismatch";
    return check;
  }
  std::vector<std::size_t> ranks(values.size());
  for (std::size_t e = 0; e < values.size(); ++e) {
    const auto& sv = scale.values();
    auto it = std::lower_bound(sv.begin(), sv.end(), values[e]);
    if (it == sv.end() || *it != values[e]) {
      MonotonicityCheck check;
      check.ok = false;
      check.reason = "value of '" + poset.label(e) + "' is not in the scale";
      return check;
    }
    ranks[e] = static_cast<std::size_t>(it - sv.begin()) + 1;
  }
  return check_monotone_bijection(poset, scale, MonotoneBijection(std::move(ranks)));
}

MonotoneBijection swap_adjacent(const Poset& poset, const MonotoneBijection& f, Element alpha, Element beta) {
  if (poset.comparable(alpha, beta)) {
    throw NotIncomparable("'" + poset.label(alpha) + "' and '" + poset.label(beta) + "' are comparable");
  }
  const auto ra = f.rank(alpha);
  const auto rb = f.rank(beta);
  if (ra + 1 != rb && rb + 1 != ra) {
    throw NotAdjacentValues("values of '" + poset.label(alpha) + "' and '" + poset.label(beta) +
                            "' are not adjacent in the scale");
  }
  auto ranks = f.ranks();
  std::swap(ranks[alpha], ranks[beta]);
  return MonotoneBijection(std::move(ranks));
}

}  // namespace monoext
