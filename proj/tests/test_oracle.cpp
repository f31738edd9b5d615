#include <doctest.h>

#include <numeric>

#include "monoext/acceptance.hpp"
#include "monoext/error.hpp"
#include "monoext/oracle.hpp"
#include "test_support.hpp"

using namespace monoext;
using monoext::testing::antichain;
using monoext::testing::chain;
using monoext::testing::integer_scale;

TEST_CASE("brute force on small posets") {
  const auto g = grid_poset(2, GridOrder::product);
  const auto r = brute_min_max(g, integer_scale(4), QuerySet::from_labels(g, {"(1,2)"}));
  CHECK(r.min.objective == 2);
  CHECK(r.max.objective == 3);
  CHECK(r.count == 2);

  const auto a = antichain(3);
  const auto ra = brute_min_max(a, integer_scale(3), QuerySet(a, {0}));
  CHECK(ra.min.objective == 1);
  CHECK(ra.max.objective == 3);
  CHECK(ra.count == 6);

  const auto c = chain(4);
  const auto rc = brute_min_max(c, integer_scale(4), QuerySet(c, {1, 3}));
  CHECK(rc.count == 1);
  CHECK(rc.min.objective == rc.max.objective);

  CHECK_THROWS_AS(brute_min_max(c, integer_scale(4), QuerySet(c, {})), EmptyQuery);
  CHECK_THROWS_AS(brute_min_max(c, integer_scale(3), QuerySet(c, {0})), ScaleSizeMismatch);
}

TEST_CASE("monotone bijection checker") {
  const auto c = chain(2);
  const auto scale = integer_scale(2);
  CHECK(check_monotone_bijection(c, scale, MonotoneBijection({1, 2})));
  const auto bad = check_monotone_bijection(c, scale, MonotoneBijection({2, 1}));
  CHECK_FALSE(bad);
  REQUIRE(bad.violating_pair);
  CHECK(*bad.violating_pair == std::make_pair(Element{0}, Element{1}));
  CHECK_FALSE(check_monotone_bijection(c, scale, MonotoneBijection({1, 1})));
  CHECK_FALSE(check_monotone_bijection(c, scale, MonotoneBijection({1, 3})));

  const std::vector<Rational> off_scale{Rational(1), Rational(5, 2)};
  CHECK_FALSE(check_monotone_bijection(c, scale, off_scale));
}

TEST_CASE("adjacent swaps") {
  const auto g = grid_poset(2, GridOrder::product);
  const auto e12 = g.index_of("(1,2)");
  const auto e21 = g.index_of("(2,1)");
  std::vector<std::size_t> ranks(4);
  ranks[g.index_of("(1,1)")] = 1;
  ranks[e12] = 2;
  ranks[e21] = 3;
  ranks[g.index_of("(2,2)")] = 4;
  const auto swapped = swap_adjacent(g, MonotoneBijection(ranks), e12, e21);
  CHECK(swapped.rank(e12) == 3);
  CHECK(swapped.rank(e21) == 2);
  CHECK(check_monotone_bijection(g, integer_scale(4), swapped));

  CHECK_THROWS_AS(swap_adjacent(g, MonotoneBijection(ranks), g.index_of("(1,1)"), e12), NotIncomparable);

  const auto a = antichain(3);
  CHECK(check_monotone_bijection(a, integer_scale(3), swap_adjacent(a, MonotoneBijection({1, 2, 3}), 0, 1)));
  CHECK_THROWS_AS(swap_adjacent(a, MonotoneBijection({1, 2, 3}), 0, 2), NotAdjacentValues);
}

TEST_CASE("property: extension counts, swap closure and relabeling invariance") {
  acceptance::Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const auto p = acceptance::random_poset(rng, n, 0.3);
    const auto scale = acceptance::random_scale(rng, n);
    const auto q = acceptance::random_query(rng, p);
    const auto truth = brute_min_max(p, scale, q);
    CHECK(truth.count == linear_extensions(p).size());

    const auto f = acceptance::random_linear_extension(rng, p);
    REQUIRE(check_monotone_bijection(p, scale, f));
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        const auto ra = f.rank(a);
        const auto rb = f.rank(b);
        if (a == b || p.comparable(a, b) || (ra + 1 != rb && rb + 1 != ra)) continue;
        CHECK(check_monotone_bijection(p, scale, swap_adjacent(p, f, a, b)));
      }
    }

    // Move every element to a new canonical index.
    std::vector<Element> to(n);
    std::iota(to.begin(), to.end(), Element{0});
    std::shuffle(to.begin(), to.end(), rng);
    std::vector<std::string> labels(n);
    for (Element e = 0; e < n; ++e) labels[to[e]] = p.label(e);
    std::vector<std::pair<Element, Element>> covers;
    for (const auto& [a, b] : p.covers()) covers.emplace_back(to[a], to[b]);
    const auto moved = Poset::from_indices(labels, covers);
    std::vector<Element> mq;
    for (Element e : q) mq.push_back(to[e]);
    const auto again = brute_min_max(moved, scale, QuerySet(moved, mq));
    CHECK(again.min.objective == truth.min.objective);
    CHECK(again.max.objective == truth.max.objective);
    CHECK(again.count == truth.count);
  }
}
