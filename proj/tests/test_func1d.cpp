#include <doctest.h>

#include <cmath>
#include <random>

#include "monoext/error.hpp"
#include "monoext/func1d.hpp"

using namespace monoext;

TEST_CASE("map inverses") {
  CHECK(MonotoneMap1D::identity().inverse(0.3) == doctest::Approx(0.3));
  CHECK(MonotoneMap1D::power(2).inverse(0.25) == doctest::Approx(0.5).epsilon(1e-14));
  const auto pwl = MonotoneMap1D::piecewise_linear({{0, 0}, {0.5, 0.25}, {1, 1}});
  CHECK(pwl.inverse(0.25) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pwl.kinks() == std::vector<double>{0.5});

  CHECK_THROWS_AS(MonotoneMap1D::power(-1), InvalidMap);
  CHECK_THROWS_AS(MonotoneMap1D::piecewise_linear({{0, 0}, {0.5, 0.6}, {1, 0.5}}), InvalidMap);
  CHECK_THROWS_AS(MonotoneMap1D::identity().eval(1.5), OutOfDomain);
  CHECK_THROWS_AS(MonotoneMap1D::constant(0.5).inverse(0.5), InvalidMap);
  CHECK_FALSE(MonotoneMap1D::constant(0.5).is_bijection());
  CHECK_THROWS_AS(require_bijection(MonotoneMap1D::constant(0.5), "m"), InvalidMap);
}

TEST_CASE("property: inverse undoes eval on a 1000-point grid") {
  const std::vector<MonotoneMap1D> maps{
      MonotoneMap1D::identity(), MonotoneMap1D::power(2), MonotoneMap1D::power(0.3), MonotoneMap1D::power(5),
      MonotoneMap1D::piecewise_linear({{0, 0}, {0.2, 0.5}, {0.7, 0.6}, {1, 1}})};
  for (const auto& m : maps) {
    for (int i = 0; i <= 1000; ++i) {
      const double x = i / 1000.0;
      CHECK(std::abs(m.inverse(m.eval(x)) - x) <= 1e-11);
    }
  }
  for (int i = 0; i <= 100; ++i) {
    const double y = i / 100.0;
    CHECK(bisect_inverse([](double x) { return x * x * x; }, y) == doctest::Approx(std::cbrt(y)).epsilon(1e-11));
  }
}

TEST_CASE("distribution functions") {
  const auto constant = distribution_function(EmpiricalRV({0.4, 0.4, 0.4}));
  CHECK(constant.eval(0.0) == 1.0);
  CHECK(constant.eval(0.39) == 1.0);
  CHECK(constant.eval(0.4) == 0.0);
  CHECK(constant.eval(0.9) == 0.0);

  CHECK(distribution_function(EmpiricalRV({0.2, 0.8})).eval(0.5) == 0.5);

  std::vector<double> grid;
  for (int i = 0; i < 1000; ++i) grid.push_back((i + 0.5) / 1000.0);
  const auto uniform = distribution_function(EmpiricalRV(grid));
  for (int i = 0; i < 1000; ++i) {
    const double t = i / 1000.0;
    CHECK(std::abs(uniform.eval(t) - (1.0 - t)) <= 1e-12);
  }
}

TEST_CASE("rearrangements") {
  const auto c = rearrangement(EmpiricalRV({0.3, 0.3}));
  CHECK(c.pieces() == 1);
  CHECK(c.eval(0.0) == 0.3);
  CHECK(c.eval(0.99) == 0.3);

  const auto two = rearrangement(EmpiricalRV({0.2, 0.8}));
  CHECK(two.eval(0.25) == 0.8);
  CHECK(two.eval(0.5) == 0.2);
  CHECK(two.eval(0.75) == 0.2);

  std::vector<double> grid;
  for (int i = 1; i <= 10000; ++i) grid.push_back(i / 10000.0);
  const auto r = rearrangement(EmpiricalRV(grid));
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const double s = (i + 0.5) / 10000.0;
    worst = std::max(worst, std::abs(r.eval(s) - (1.0 - s)));
  }
  CHECK(worst <= 1e-3);

  CHECK_THROWS_AS(EmpiricalRV({}), InvalidSamples);
  CHECK_THROWS_AS(EmpiricalRV({1.2}), InvalidSamples);
}

TEST_CASE("integration") {
  CHECK(std::abs(integrate([](double s) { return s; }, 0, 1) - 0.5) <= 1e-9);
  CHECK(std::abs(integrate([](double s) { return (1 - s) * s; }, 0, 1) - 1.0 / 6) <= 1e-9);
  CHECK(std::abs(integrate([](double s) { return std::sqrt(s); }, 0, 1) - 2.0 / 3) <= 1e-9);
  const StepFunction1D step({0, 0.25, 1}, {1, 0.5});
  CHECK(step.integral() == 0.25 + 0.375);
  CHECK(step.integral(0.125, 0.5) == 0.125 + 0.125);
  const std::vector<double> cuts{0.25};
  CHECK(std::abs(integrate([&](double s) { return step.eval(s); }, 0, 1, 1e-12, cuts) - 0.625) <= 1e-12);
}

TEST_CASE("property: equimeasurability, orientation and mean") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> levels(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(trial % 40);
    std::vector<double> samples;
    const int k = levels(rng);
    for (std::size_t i = 0; i < m; ++i) samples.push_back(std::floor(unit(rng) * k) / k);
    const EmpiricalRV tau(samples);

    const auto r = rearrangement(tau);
    const auto d = distribution_function(tau);
    CHECK(distribution_function(r) == d);
    CHECK(r.is_non_increasing());
    CHECK(d.is_non_increasing());
    for (double v : r.values()) CHECK((v >= 0.0 && v <= 1.0));
    for (double v : d.values()) CHECK((v >= 0.0 && v <= 1.0));
    CHECK(r.integral() == doctest::Approx(tau.mean()).epsilon(1e-14));

    // The step-function route gives the same distribution function.
    CHECK(distribution_function(rearrangement(r)) == d);
  }
}
