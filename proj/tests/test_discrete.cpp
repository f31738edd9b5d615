#include <doctest.h>

#include <cmath>

#include "monoext/acceptance.hpp"
#include "monoext/discrete_solver.hpp"
#include "monoext/error.hpp"
#include "monoext/oracle.hpp"
#include "test_support.hpp"

using namespace monoext;
using monoext::testing::antichain;
using monoext::testing::chain;
using monoext::testing::integer_scale;

namespace {

struct Grid2 {
  Poset poset = grid_poset(2, GridOrder::product);
  ValueScale scale = integer_scale(4);
  Element e11 = poset.index_of("(1,1)");
  Element e12 = poset.index_of("(1,2)");
  Element e21 = poset.index_of("(2,1)");
  Element e22 = poset.index_of("(2,2)");
};

}  // namespace

TEST_CASE("value scales") {
  CHECK_THROWS_AS(ValueScale({Rational(1), Rational(1)}), NotIncreasing);
  const auto r = integer_scale(3).reversed();
  CHECK(r.values() == std::vector<Rational>{Rational(-3), Rational(-2), Rational(-1)});
}

TEST_CASE("conditional optimum on small posets") {
  Grid2 g;
  const QuerySet b(g.poset, {g.e12});
  CHECK(conditional_min(g.poset, g.scale, b, {0}) == 2);
  CHECK(conditional_max(g.poset, g.scale, b, {0}) == 3);

  const auto c = chain(3);
  const QuerySet mid(c, {1});
  CHECK(conditional_min(c, integer_scale(3), mid, {0}) == 2);
  CHECK(conditional_max(c, integer_scale(3), mid, {0}) == 2);

  const QuerySet pair(g.poset, {g.e12, g.e21});
  for (const Permutation& perm : {Permutation{0, 1}, Permutation{1, 0}}) {
    CHECK(conditional_min(g.poset, g.scale, pair, perm) == 5);
    CHECK(conditional_max(g.poset, g.scale, pair, perm) == 5);
  }

  CHECK_THROWS_AS(conditional_min(c, integer_scale(3), QuerySet(c, {0, 2}), {1, 0}), InvalidPermutation);
  CHECK_THROWS_AS(conditional_min(c, integer_scale(3), QuerySet(c, {0, 2}), {0, 0}), InvalidPermutation);
  CHECK_THROWS_AS(conditional_min(c, integer_scale(4), mid, {0}), ScaleSizeMismatch);
}

TEST_CASE("solve_min and solve_max") {
  Grid2 g;
  CHECK(solve_min(g.poset, g.scale, QuerySet(g.poset, {g.e22})).objective == 4);
  CHECK(solve_max(g.poset, g.scale, QuerySet(g.poset, {g.e22})).objective == 4);

  const auto a = antichain(3);
  const QuerySet all(a, {0, 1, 2});
  CHECK(solve_min(a, integer_scale(3), all).objective == 6);
  CHECK(solve_max(a, integer_scale(3), all).objective == 6);

  const auto c = chain(3);
  CHECK(solve_min(c, integer_scale(3), QuerySet(c, {0, 2})).objective == 4);

  CHECK_THROWS_AS(solve_min(c, integer_scale(3), QuerySet(c, {})), EmptyQuery);
  const auto wide = antichain(7);
  CHECK_THROWS_AS(brute_min_max(wide, integer_scale(7), QuerySet(wide, {0}), 100), CapExceeded);
}

TEST_CASE("block witness") {
  const auto c = chain(3);
  const auto f = build_witness(c, integer_scale(3), QuerySet(c, {1}), {0}, Mode::min);
  CHECK(f.ranks() == std::vector<std::size_t>{1, 2, 3});

  Grid2 g;
  const QuerySet b(g.poset, {g.e12});
  const auto lo = build_witness(g.poset, g.scale, b, {0}, Mode::min);
  CHECK(lo.rank(g.e11) == 1);
  CHECK(lo.rank(g.e12) == 2);
  CHECK(lo.rank(g.e21) == 3);
  CHECK(lo.rank(g.e22) == 4);

  const auto hi = build_witness(g.poset, g.scale, b, {0}, Mode::max);
  CHECK(hi.rank(g.e12) == 3);
  CHECK(hi.rank(g.e22) == 4);
  CHECK(hi.rank(g.e11) == 1);
  CHECK(hi.rank(g.e21) == 2);
  CHECK(check_monotone_bijection(g.poset, g.scale, lo));
  CHECK(check_monotone_bijection(g.poset, g.scale, hi));
}

TEST_CASE("order reversal") {
  const auto c = chain(3);
  const auto rev = reverse_reduce(c, integer_scale(3));
  CHECK(rev.poset.less(2, 1));
  CHECK(rev.poset.less(1, 0));
  CHECK(rev.scale == ValueScale({Rational(-3), Rational(-2), Rational(-1)}));

  Grid2 g;
  const QuerySet b(g.poset, {g.e12});
  CHECK(solve_max_by_reversal(g.poset, g.scale, b).objective == 3);
  CHECK(solve_max(g.poset, g.scale, b).objective == 3);
}

TEST_CASE("closed forms") {
  const auto c = chain(3);
  const auto mm = chain_closed_form(c, integer_scale(3), QuerySet(c, {0, 2}));
  CHECK(mm.min == 4);
  CHECK(mm.max == 4);
  CHECK_THROWS_AS(chain_closed_form(c, integer_scale(3), QuerySet(c, {2, 0})), NotAChain);

  // Column s of the n×n product grid with ξ_i = i/n² sums to s(n+1)/(2n).
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto g = grid_poset(n, GridOrder::product);
    const auto scale = scale_from_m(MonotoneMap1D::identity(), n);
    for (std::size_t s = 1; s <= n; ++s) {
      std::vector<Element> col;
      for (std::size_t v = 1; v <= n; ++v) col.push_back(grid_element(n, s, v));
      Rational expected(static_cast<unsigned long>(s * (n + 1)), static_cast<unsigned long>(2 * n));
      expected.canonicalize();
      CHECK(chain_closed_form(g, scale, QuerySet(g, col)).min == expected);
    }
  }

  const Element top = grid_element(2, 2, 2);
  const auto g = grid_poset(2, GridOrder::product);
  CHECK(chain_closed_form(g, integer_scale(4), QuerySet(g, {top})).min == 4);

  const auto a = antichain(3);
  CHECK(disjoint_closed_form_min(a, integer_scale(3), QuerySet(a, {0, 1, 2})) == 6);

  const auto r = grid_poset(2, GridOrder::rows);
  const auto quarter = scale_from_m(MonotoneMap1D::identity(), 2);
  const QuerySet diag = QuerySet::from_labels(r, {"(1,1)", "(2,2)"});
  CHECK(disjoint_closed_form_min(r, quarter, diag) == 1);
  CHECK(solve_min(r, quarter, diag).objective == 1);
  CHECK_THROWS_AS(disjoint_closed_form_min(r, quarter, QuerySet::from_labels(r, {"(2,2)", "(1,1)"})),
                  PreconditionViolated);
  CHECK_THROWS_AS(disjoint_closed_form_min(c, integer_scale(3), QuerySet(c, {0, 1})), PreconditionViolated);
}

TEST_CASE("scales from a map") {
  CHECK(scale_from_m(MonotoneMap1D::identity(), 2).values() ==
        std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)});
  CHECK(scale_from_m(MonotoneMap1D::power(2), 1).values() == std::vector<Rational>{Rational(1)});
  const auto sq = scale_from_m(MonotoneMap1D::power(2), 2);
  const double expected[] = {0.5, std::sqrt(2.0) / 2, std::sqrt(3.0) / 2, 1.0};
  for (std::size_t i = 0; i < 4; ++i) CHECK(sq.values()[i].get_d() == doctest::Approx(expected[i]).epsilon(1e-15));
}

TEST_CASE("property: solver, witnesses and fast paths agree with brute force") {
  acceptance::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const auto p = acceptance::random_poset(rng, n, 0.3);
    const auto scale = acceptance::random_scale(rng, n);
    const auto q = acceptance::random_query(rng, p);
    const auto truth = brute_min_max(p, scale, q);

    const auto lo = solve_min(p, scale, q);
    const auto hi = solve_max(p, scale, q);
    REQUIRE(lo.objective == truth.min.objective);
    REQUIRE(hi.objective == truth.max.objective);
    CHECK(solve_max_by_reversal(p, scale, q).objective == hi.objective);

    for (const auto* r : {&lo, &hi}) {
      CHECK(check_monotone_bijection(p, scale, r->witness_fn));
      CHECK(query_sum(q, r->witness_fn, scale) == r->objective);
      CHECK(std::is_sorted(r->per_node_values.begin(), r->per_node_values.end()));
    }

    for (const auto& perm : admissible_permutations(p, q)) {
      const auto fmin = build_witness(p, scale, q, perm, Mode::min);
      const auto fmax = build_witness(p, scale, q, perm, Mode::max);
      CHECK(check_monotone_bijection(p, scale, fmin));
      CHECK(check_monotone_bijection(p, scale, fmax));
      CHECK(query_sum(q, fmin, scale) == conditional_min(p, scale, q, perm));
      CHECK(query_sum(q, fmax, scale) == conditional_max(p, scale, q, perm));

      // Every prefix union of down-sets takes exactly the smallest values.
      ElementSet t(n);
      for (std::size_t k : perm) {
        t |= p.down_set(q[k]);
        std::size_t top = 0;
        for (Element e : t.elements()) top = std::max(top, fmin.rank(e));
        CHECK(top == t.size());
      }
    }

    // Chain fast path on a chain query sorted bottom-up.
    std::vector<Element> sorted_q = q.elements();
    std::sort(sorted_q.begin(), sorted_q.end(),
              [&](Element a, Element b) { return p.down_set(a).size() < p.down_set(b).size(); });
    bool is_chain = true;
    for (std::size_t k = 1; k < sorted_q.size(); ++k) is_chain &= p.less(sorted_q[k - 1], sorted_q[k]);
    if (is_chain) {
      const QuerySet cq(p, sorted_q);
      const auto mm = chain_closed_form(p, scale, cq);
      CHECK(mm.min == lo.objective);
      CHECK(mm.max == hi.objective);
    }
  }
}

TEST_CASE("property: disjoint fast paths agree with the solver") {
  acceptance::Rng rng(12);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto p = acceptance::random_poset(rng, n, 0.25);
    const auto scale = acceptance::random_scale(rng, n);
    const auto q = acceptance::random_query(rng, p);

    for (bool down : {true, false}) {
      std::vector<Element> items = q.elements();
      auto set = [&](Element e) { return down ? p.down_set(e) : p.up_set(e); };
      std::sort(items.begin(), items.end(), [&](Element a, Element b) { return set(a).size() < set(b).size(); });
      bool disjoint = true;
      for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = i + 1; j < items.size(); ++j) disjoint &= !set(items[i]).intersects(set(items[j]));
      }
      if (!disjoint) continue;
      ++checked;
      const QuerySet dq(p, items);
      if (down) {
        CHECK(disjoint_closed_form_min(p, scale, dq) == solve_min(p, scale, dq).objective);
      } else {
        CHECK(disjoint_closed_form_max(p, scale, dq) == solve_max(p, scale, dq).objective);
      }
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("property: adding a query element never lowers the minimum for positive scales") {
  acceptance::Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const auto p = acceptance::random_poset(rng, n, 0.3);
    const auto scale = scale_from_m(MonotoneMap1D::identity(), 3);
    std::vector<Rational> vals(scale.values().begin(), scale.values().begin() + static_cast<long>(n));
    const ValueScale positive(vals);
    const auto q = acceptance::random_query(rng, p);
    if (q.size() == n) continue;
    std::vector<Element> bigger = q.elements();
    for (Element e = 0; e < n; ++e) {
      if (std::find(bigger.begin(), bigger.end(), e) == bigger.end()) {
        bigger.push_back(e);
        break;
      }
    }
    CHECK(solve_min(p, positive, QuerySet(p, bigger)).objective >= solve_min(p, positive, q).objective);
  }
}
