#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "monoext/func1d.hpp"
#include "monoext/rational.hpp"

namespace monoext {

/// Coordinate-wise non-decreasing surface on [0,1]² attaining the line
/// integral lower bound along the path s ↦ (t(s), s):
///   f(x,y) = m⁻¹(t(s)·s)              on Π_s (s the smallest value with x <= t(s), y <= s)
///   f(x,y) = m⁻¹(t(1) + (1-t(1))·y)   for x > t(1).
class ExtremalSurface {
 public:
  /// Throws InvalidMap unless m is an increasing bijection.
  ExtremalSurface(MonotoneMap1D m, MonotoneMap1D t);

  const MonotoneMap1D& m() const { return m_; }
  const MonotoneMap1D& t() const { return t_; }

  /// Smallest s with x <= t(s) and y <= s; nullopt when x > t(1).
  std::optional<double> region_index(double x, double y) const;

  /// Throws OutOfDomain outside the unit square.
  double operator()(double x, double y) const;

 private:
  /// inf{s : t(s) >= x}, exact for bijective paths and by bisection to 1e-12
  /// otherwise.
  double path_inverse(double x) const;

  MonotoneMap1D m_;
  MonotoneMap1D t_;
};

/// ∫₀¹ m⁻¹(t(s)·s) ds.
double line_integral_bound(const MonotoneMap1D& m, const MonotoneMap1D& t, double tol = kDefaultQuadratureTol);

double eval_extremal_surface(const MonotoneMap1D& m, const MonotoneMap1D& t, double x, double y);

/// ∫₀¹ f(t(s), s) ds for the extremal surface f.
double line_integral_on_surface(const MonotoneMap1D& m, const MonotoneMap1D& t, double tol = kDefaultQuadratureTol);

using Surface = std::function<double(double, double)>;

struct GridPoint {
  double x = 0;
  double y = 0;
  double value = 0;
};

struct SurfaceMembershipReport {
  bool passed = false;
  std::size_t grid_n = 0;
  bool monotone = true;
  /// First pair p <= q (coordinate-wise) found with f(p) > f(q).
  std::optional<std::pair<GridPoint, GridPoint>> monotonicity_violation;
  double max_distribution_deviation = 0;  ///< max_u |μ̂{f > m⁻¹(u)} − (1 − u)|
  double worst_u = 0;
  double tolerance = 0;  ///< 2/grid_n + 1e-9
};

/// Grid test of membership in the class: exact monotonicity between
/// neighbouring cell centres, and cell-counted level-set measures against
/// 1 − u for u = 0, 1/grid_n, ..., 1. Never throws for a failing surface.
SurfaceMembershipReport check_surface_membership(const Surface& f, const MonotoneMap1D& m, std::size_t grid_n);

/// check_surface_membership on the extremal surface; throws
/// MembershipViolation (with the witnessing points) when it fails.
SurfaceMembershipReport verify_membership(const MonotoneMap1D& m, const MonotoneMap1D& t, std::size_t grid_n);
/// Same check on an arbitrary surface.
SurfaceMembershipReport verify_membership(const Surface& f, const MonotoneMap1D& m, std::size_t grid_n);

/// Discretized construction with m = id and t ≡ alpha: the n×n grid
/// function φ_n filled row by row on the first `column` columns and then on
/// the rest, with values in {1/n², ..., 1}.
struct GridExperimentRecord {
  double alpha = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t column = 0;  ///< s = ⌈αn⌉, the column containing x = α
  Rational column_sum;     ///< Σ_v φ_n(s, v)
  Rational discrete_bound; ///< s(n+1)/(2n), the chain lower bound for that sum
  double discrete_value = 0;  ///< column_sum / n, approximates ∫₀¹ f(α, y) dy
  double target = 0;          ///< α/2
  double error = 0;           ///< |discrete_value − target|
  double error_constant = 0;  ///< error · n
  bool phi_is_monotone_bijection = false;
};

/// Throws InvalidGrid unless 0 < alpha <= 1, n >= 2 and k divides n.
GridExperimentRecord grid_experiment(double alpha, std::size_t n, std::size_t k);

}  // namespace monoext
