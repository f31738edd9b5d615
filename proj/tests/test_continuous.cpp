#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "monoext/acceptance.hpp"
#include "monoext/continuous_bound.hpp"
#include "monoext/discrete_solver.hpp"
#include "monoext/error.hpp"

using namespace monoext;

namespace {

std::size_t cell(double x, std::size_t n) {
  return std::min<std::size_t>(static_cast<std::size_t>(x * static_cast<double>(n)), n - 1);
}

// Piecewise-constant surface on an n×n grid of cells; values[i * n + j] is
// the cell with column i and row j (0-based).
struct CellSurface {
  std::size_t n = 0;
  std::vector<double> values;
  double operator()(double x, double y) const { return values[cell(x, n) * n + cell(y, n)]; }
};

// m⁻¹(rank / n²) for a random linear extension of the product grid: monotone,
// and μ{f > m⁻¹(u)} = 1 − ⌊u n²⌋ / n².
CellSurface staircase(acceptance::Rng& rng, const MonotoneMap1D& m, std::size_t n) {
  const auto f = acceptance::random_linear_extension(rng, grid_poset(n, GridOrder::product));
  CellSurface out{n, std::vector<double>(n * n)};
  const double cells = static_cast<double>(n * n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      out.values[(i - 1) * n + (j - 1)] = m.inverse(static_cast<double>(f.rank(grid_element(n, i, j))) / cells);
    }
  }
  return out;
}

// ∫₀¹ f(t(s), s) ds for a cell surface, exact up to locating cell crossings.
double path_integral(const CellSurface& f, const MonotoneMap1D& t) {
  std::vector<double> cuts{0.0, 1.0};
  for (std::size_t k = 1; k < f.n; ++k) {
    const double level = static_cast<double>(k) / static_cast<double>(f.n);
    cuts.push_back(level);
    if (t.eval(0.0) < level && t.eval(1.0) >= level) {
      double lo = 0.0;
      double hi = 1.0;
      while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        (t.eval(mid) >= level ? hi : lo) = mid;
      }
      cuts.push_back(hi);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t k = 1; k < cuts.size(); ++k) {
    const double a = cuts[k - 1];
    const double b = cuts[k];
    if (b > a) total += (b - a) * f(t.eval(0.5 * (a + b)), 0.5 * (a + b));
  }
  return total;
}

}  // namespace

TEST_CASE("line integral bound") {
  const auto id = MonotoneMap1D::identity();
  CHECK(line_integral_bound(id, MonotoneMap1D::constant(0.5)) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(std::abs(line_integral_bound(id, id) - 1.0 / 3) <= 1e-9);
  CHECK(std::abs(line_integral_bound(MonotoneMap1D::power(2), MonotoneMap1D::constant(0.25)) - 1.0 / 3) <= 1e-9);
  for (double alpha : {0.1, 0.3, 0.7, 1.0}) {
    CHECK(std::abs(line_integral_bound(id, MonotoneMap1D::constant(alpha)) - alpha / 2) <= 1e-9);
  }
  CHECK_THROWS_AS(line_integral_bound(MonotoneMap1D::constant(0.5), id), InvalidMap);
}

TEST_CASE("extremal surface values") {
  const auto id = MonotoneMap1D::identity();
  const double alpha = 0.4;
  const auto t = MonotoneMap1D::constant(alpha);
  for (double y : {0.0, 0.2, 0.5, 1.0}) {
    CHECK(eval_extremal_surface(id, t, alpha, y) == doctest::Approx(alpha * y));
    CHECK(eval_extremal_surface(id, t, 0.1, y) == doctest::Approx(alpha * y));
    CHECK(eval_extremal_surface(id, t, 0.9, y) == doctest::Approx((1 - alpha) * y + alpha));
  }

  const auto pwl = MonotoneMap1D::piecewise_linear({{0, 0.1}, {0.5, 0.3}, {1, 0.8}});
  const auto sq = MonotoneMap1D::power(2);
  for (double s : {0.05, 0.3, 0.5, 0.77, 1.0}) {
    CHECK(eval_extremal_surface(sq, pwl, pwl.eval(s), s) == doctest::Approx(sq.inverse(pwl.eval(s) * s)));
  }
  CHECK_THROWS_AS(eval_extremal_surface(id, t, 1.2, 0.5), OutOfDomain);
}

TEST_CASE("extremal surface membership") {
  const auto id = MonotoneMap1D::identity();
  const auto half = verify_membership(id, MonotoneMap1D::constant(0.5), 200);
  CHECK(half.passed);
  CHECK(half.max_distribution_deviation <= 0.01);
  CHECK(verify_membership(id, id, 200).passed);
  CHECK(verify_membership(MonotoneMap1D::power(2), MonotoneMap1D::constant(0.25), 200).passed);

  // Exchange the values of two distant points: monotonicity breaks.
  const ExtremalSurface f(id, MonotoneMap1D::constant(0.5));
  const Surface corrupted = [&](double x, double y) {
    if (x < 0.1 && y < 0.1) return f(1.0 - x, 1.0 - y);
    if (x > 0.9 && y > 0.9) return f(1.0 - x, 1.0 - y);
    return f(x, y);
  };
  CHECK_THROWS_AS(verify_membership(corrupted, id, 200), MembershipViolation);
  CHECK_FALSE(check_surface_membership(corrupted, id, 200).monotone);

  // Monotone but with the wrong distribution.
  const Surface squashed = [&](double x, double y) { return 0.5 * f(x, y); };
  CHECK_THROWS_AS(verify_membership(squashed, id, 200), MembershipViolation);
  CHECK_THROWS_AS(verify_membership(id, id, 1), InvalidGrid);
}

TEST_CASE("sharpness of the extremal surface") {
  const std::vector<MonotoneMap1D> ms{MonotoneMap1D::identity(), MonotoneMap1D::power(2), MonotoneMap1D::power(0.5)};
  const std::vector<MonotoneMap1D> ts{MonotoneMap1D::identity(), MonotoneMap1D::constant(0.5),
                                      MonotoneMap1D::constant(0.25),
                                      MonotoneMap1D::piecewise_linear({{0, 0.1}, {0.5, 0.3}, {1, 0.8}})};
  const double tol = 1e-9;
  for (const auto& m : ms) {
    for (const auto& t : ts) {
      CHECK(std::abs(line_integral_on_surface(m, t, tol) - line_integral_bound(m, t, tol)) <= 2 * tol);
    }
  }
  CHECK(std::abs(line_integral_on_surface(MonotoneMap1D::identity(), MonotoneMap1D::constant(0.5)) - 0.25) <= 1e-9);
}

TEST_CASE("property: random members of the class stay above the bound") {
  acceptance::Rng rng(41);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  const std::vector<MonotoneMap1D> ms{MonotoneMap1D::identity(), MonotoneMap1D::power(2)};
  for (int trial = 0; trial < 20; ++trial) {
    const auto& m = ms[static_cast<std::size_t>(trial) % ms.size()];
    const std::size_t n = 4 + static_cast<std::size_t>(trial % 5);

    CellSurface member = staircase(rng, m, n);
    REQUIRE(check_surface_membership(member, m, 8 * n).passed);
    for (int extra = 0; extra < trial % 3; ++extra) {
      const auto other = staircase(rng, m, n);
      REQUIRE(check_surface_membership(other, m, 8 * n).passed);
      for (std::size_t k = 0; k < member.values.size(); ++k) {
        member.values[k] = std::max(member.values[k], other.values[k]);
      }
    }
    // A pointwise maximum stays monotone and only raises the level sets.
    const auto report = check_surface_membership(member, m, 8 * n);
    CHECK(report.monotone);
    std::vector<double> sorted = member.values;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k <= n * n; ++k) {
      const double u = static_cast<double>(k) / static_cast<double>(n * n);
      const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), m.inverse(u));
      CHECK(static_cast<double>(above) / static_cast<double>(n * n) >= 1.0 - u - 1e-12);
    }

    const double a = unit(rng);
    const double b = unit(rng);
    const std::vector<MonotoneMap1D> paths{
        MonotoneMap1D::constant(a), MonotoneMap1D::identity(),
        MonotoneMap1D::piecewise_linear({{0, std::min(a, b)}, {0.5, std::max(a, b)}, {1, 1}})};
    for (const auto& t : paths) CHECK(path_integral(member, t) >= line_integral_bound(m, t) - 1e-6);
  }
}

TEST_CASE("property: the bound grows with the path") {
  acceptance::Rng rng(43);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> lo(4);
    std::vector<double> hi(4);
    for (auto& v : lo) v = unit(rng);
    std::sort(lo.begin(), lo.end());
    for (std::size_t k = 0; k < 4; ++k) hi[k] = lo[k] + (1.0 - lo[k]) * unit(rng);
    for (std::size_t k = 1; k < 4; ++k) hi[k] = std::max(hi[k], hi[k - 1]);
    const auto t1 = MonotoneMap1D::piecewise_linear({{0, lo[0]}, {0.3, lo[1]}, {0.6, lo[2]}, {1, lo[3]}});
    const auto t2 = MonotoneMap1D::piecewise_linear({{0, hi[0]}, {0.3, hi[1]}, {0.6, hi[2]}, {1, hi[3]}});
    for (const auto& m : {MonotoneMap1D::identity(), MonotoneMap1D::power(3)}) {
      CHECK(line_integral_bound(m, t1) <= line_integral_bound(m, t2) + 2e-9);
    }
  }
}

TEST_CASE("grid experiment") {
  const auto rec = grid_experiment(0.5, 100, 10);
  CHECK(rec.phi_is_monotone_bijection);
  CHECK(rec.column == 50);
  CHECK(std::abs(rec.discrete_value - 0.25) <= 0.02);

  for (std::size_t n : {2, 3, 8}) {
    const auto full = grid_experiment(1.0, n, 1);
    Rational expected(static_cast<unsigned long>(n + 1), static_cast<unsigned long>(2 * n));
    expected.canonicalize();
    CHECK(full.discrete_bound / static_cast<unsigned long>(n) == expected);
  }

  // The recorded bound is the chain closed form on the column.
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto g = grid_poset(n, GridOrder::product);
    const auto scale = scale_from_m(MonotoneMap1D::identity(), n);
    for (double alpha : {0.2, 0.5, 0.9}) {
      const auto r = grid_experiment(alpha, n, 1);
      std::vector<Element> col;
      for (std::size_t v = 1; v <= n; ++v) col.push_back(grid_element(n, r.column, v));
      CHECK(chain_closed_form(g, scale, QuerySet(g, col)).min == r.discrete_bound);
      CHECK(r.column_sum >= r.discrete_bound);
    }
  }

  CHECK_THROWS_AS(grid_experiment(0.0, 10, 1), InvalidGrid);
  CHECK_THROWS_AS(grid_experiment(0.5, 10, 3), InvalidGrid);
  CHECK_THROWS_AS(grid_experiment(0.5, 1, 1), InvalidGrid);
}
