#include "monoext/continuous_bound.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "monoext/error.hpp"

namespace monoext {

namespace {

constexpr double kRegionTol = 1e-12;

void check_unit_square(double x, double y) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
    throw OutOfDomain("point (" + std::to_string(x) + ", " + std::to_string(y) + ") outside [0,1]^2");
  }
}

std::vector<double> path_kinks(const MonotoneMap1D& t) { return t.kinks(); }

}  // namespace

ExtremalSurface::ExtremalSurface(MonotoneMap1D m, MonotoneMap1D t) : m_(std::move(m)), t_(std::move(t)) {
  require_bijection(m_, "m");
}

std::optional<double> ExtremalSurface::region_index(double x, double y) const {
  check_unit_square(x, y);
  if (x > t_.eval(1.0)) return std::nullopt;
  // s = max(y, inf{s : t(s) >= x}); the second term depends on x only, which
  // keeps the index monotone in both coordinates.
  if (x <= t_.eval(y)) return y;
  return std::max(y, path_inverse(x));
}

double ExtremalSurface::path_inverse(double x) const {
  if (t_.is_bijection()) return t_.inverse(x);
  if (x <= t_.eval(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > kRegionTol) {
    const double mid = 0.5 * (lo + hi);
    if (t_.eval(mid) >= x) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double ExtremalSurface::operator()(double x, double y) const {
  if (auto s = region_index(x, y)) return m_.inverse(t_.eval(*s) * *s);
  const double t1 = t_.eval(1.0);
  return m_.inverse(std::min(1.0, t1 + (1.0 - t1) * y));
}

double line_integral_bound(const MonotoneMap1D& m, const MonotoneMap1D& t, double tol) {
  require_bijection(m, "m");
  const auto kinks = path_kinks(t);
  return integrate([&](double s) { return m.inverse(t.eval(s) * s); }, 0.0, 1.0, tol, kinks);
}

double eval_extremal_surface(const MonotoneMap1D& m, const MonotoneMap1D& t, double x, double y) {
  return ExtremalSurface(m, t)(x, y);
}

double line_integral_on_surface(const MonotoneMap1D& m, const MonotoneMap1D& t, double tol) {
  const ExtremalSurface f(m, t);
  const auto kinks = path_kinks(t);
  return integrate([&](double s) { return f(t.eval(s), s); }, 0.0, 1.0, tol, kinks);
}

SurfaceMembershipReport check_surface_membership(const Surface& f, const MonotoneMap1D& m, std::size_t grid_n) {
  if (grid_n < 2) throw InvalidGrid("membership grid needs at least 2 cells per side");
  require_bijection(m, "m");

  SurfaceMembershipReport report;
  report.grid_n = grid_n;
  report.tolerance = 2.0 / static_cast<double>(grid_n) + 1e-9;

  const double h = 1.0 / static_cast<double>(grid_n);
  auto centre = [&](std::size_t i) { return (static_cast<double>(i) + 0.5) * h; };

  // values[i * grid_n + j] = f(x_i, y_j)
  std::vector<double> values(grid_n * grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) {
    for (std::size_t j = 0; j < grid_n; ++j) values[i * grid_n + j] = f(centre(i), centre(j));
  }

  auto point = [&](std::size_t i, std::size_t j) { return GridPoint{centre(i), centre(j), values[i * grid_n + j]}; };
  for (std::size_t i = 0; i < grid_n && report.monotone; ++i) {
    for (std::size_t j = 0; j < grid_n; ++j) {
      const double v = values[i * grid_n + j];
      if (i + 1 < grid_n && v > values[(i + 1) * grid_n + j]) {
        report.monotone = false;
        report.monotonicity_violation = std::make_pair(point(i, j), point(i + 1, j));
        break;
      }
      if (j + 1 < grid_n && v > values[i * grid_n + j + 1]) {
        report.monotone = false;
        report.monotonicity_violation = std::make_pair(point(i, j), point(i, j + 1));
        break;
      }
    }
  }

  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double cells = static_cast<double>(sorted.size());
  for (std::size_t k = 0; k <= grid_n; ++k) {
    const double u = static_cast<double>(k) * h;
    const double level = m.inverse(u);
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), level);
    const double dev = std::abs(static_cast<double>(above) / cells - (1.0 - u));
    if (dev > report.max_distribution_deviation) {
      report.max_distribution_deviation = dev;
      report.worst_u = u;
    }
  }

  report.passed = report.monotone && report.max_distribution_deviation <= report.tolerance;
  return report;
}

SurfaceMembershipReport verify_membership(const MonotoneMap1D& m, const MonotoneMap1D& t, std::size_t grid_n) {
  return verify_membership(ExtremalSurface(m, t), m, grid_n);
}

SurfaceMembershipReport verify_membership(const Surface& f, const MonotoneMap1D& m, std::size_t grid_n) {
  auto report = check_surface_membership(f, m, grid_n);
  if (!report.passed) {
    std::ostringstream msg;
    if (const auto& v = report.monotonicity_violation) {
      msg << "surface decreases from (" << v->first.x << ", " << v->first.y << ") = " << v->first.value << " to ("
          << v->second.x << ", " << v->second.y << ") = " << v->second.value;
    } else {
      msg << "level-set measure deviates by " << report.max_distribution_deviation << " at u = " << report.worst_u
          << " (budget " << report.tolerance << ")";
    }
    throw MembershipViolation(msg.str());
  }
  return report;
}

GridExperimentRecord grid_experiment(double alpha, std::size_t n, std::size_t k) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidGrid("alpha must lie in (0,1]");
  if (n < 2) throw InvalidGrid("n must be at least 2");
  if (k == 0 || n % k != 0) throw InvalidGrid("k must divide n");

  GridExperimentRecord rec;
  rec.alpha = alpha;
  rec.n = n;
  rec.k = k;
  const std::size_t s = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(n) - 1e-12)), 1, n);
  rec.column = s;

  // rank(i, j): rows of width s on the left block, then rows of width n - s.
  auto rank = [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i <= s) return (j - 1) * s + i;
    return s * n + (j - 1) * (n - s) + (i - s);
  };

  std::vector<bool> seen(n * n + 1, false);
  bool ok = true;
  for (std::size_t i = 1; i <= n && ok; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const auto r = rank(i, j);
      if (r < 1 || r > n * n || seen[r]) {
        ok = false;
        break;
      }
      seen[r] = true;
      if ((i < n && rank(i + 1, j) < r) || (j < n && rank(i, j + 1) < r)) {
        ok = false;
        break;
      }
    }
  }
  rec.phi_is_monotone_bijection = ok;

  mpz_class total = 0;
  for (std::size_t j = 1; j <= n; ++j) total += static_cast<unsigned long>(rank(s, j));
  const mpz_class cells = static_cast<unsigned long>(n * n);
  rec.column_sum = Rational(total, cells);
  rec.column_sum.canonicalize();
  rec.discrete_bound = Rational(static_cast<unsigned long>(s * (n + 1)), static_cast<unsigned long>(2 * n));
  rec.discrete_bound.canonicalize();

  rec.discrete_value = Rational(rec.column_sum / static_cast<unsigned long>(n)).get_d();
  rec.target = alpha / 2.0;
  rec.error = std::abs(rec.discrete_value - rec.target);
  rec.error_constant = rec.error * static_cast<double>(n);
  return rec;
}

}  // namespace monoext
