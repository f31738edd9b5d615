#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace monoext {

/// Non-decreasing map of [0,1] into [0,1]. Used both for increasing
/// bijections m (which need an inverse) and for paths t(s), which may be flat.
class MonotoneMap1D {
 public:
  enum class Kind { identity, power, piecewise_linear };

  static MonotoneMap1D identity();
  /// u ↦ u^p, p > 0.
  static MonotoneMap1D power(double p);
  /// Linear interpolation through `points`; x must run strictly from 0 to 1
  /// and y must be non-decreasing within [0,1].
  static MonotoneMap1D piecewise_linear(std::vector<std::pair<double, double>> points);
  /// t(s) ≡ alpha, as a two-point piecewise-linear map.
  static MonotoneMap1D constant(double alpha);

  Kind kind() const { return kind_; }
  double exponent() const { return exponent_; }
  const std::vector<std::pair<double, double>>& points() const { return points_; }

  /// Strictly increasing with m(0) = 0 and m(1) = 1.
  bool is_bijection() const;

  /// Throws OutOfDomain outside [0,1].
  double eval(double x) const;
  /// Exact inverse of a strictly increasing map. Throws OutOfDomain outside
  /// [0,1] and InvalidMap when the map has flat pieces.
  double inverse(double y) const;

  /// Interior points where the map is not smooth.
  std::vector<double> kinks() const;

 private:
  MonotoneMap1D() = default;

  Kind kind_ = Kind::identity;
  double exponent_ = 1.0;
  std::vector<std::pair<double, double>> points_;
};

/// Throws InvalidMap unless `m` is an increasing bijection of [0,1].
void require_bijection(const MonotoneMap1D& m, std::string_view role);

/// Inverse of a continuous increasing f on [0,1] by bisection, to absolute
/// tolerance `tol` in the argument.
double bisect_inverse(const std::function<double(double)>& f, double y, double tol = 1e-12);

/// Piecewise-constant function on [0,1]; piece i is [x_i, x_{i+1}) and the
/// last piece also covers x = 1.
class StepFunction1D {
 public:
  /// breakpoints: 0 = x_0 < ... < x_K = 1; values: K entries in [0,1].
  StepFunction1D(std::vector<double> breakpoints, std::vector<double> values);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t pieces() const { return values_.size(); }

  bool is_non_increasing() const;
  bool is_non_decreasing() const;

  double eval(double x) const;
  /// Exact sum of piece areas over [a, b] ⊆ [0,1].
  double integral(double a = 0.0, double b = 1.0) const;

  friend bool operator==(const StepFunction1D&, const StepFunction1D&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// Random variable given by M equally weighted samples in [0,1].
class EmpiricalRV {
 public:
  /// Sorts the samples. Throws InvalidSamples when empty or outside [0,1].
  explicit EmpiricalRV(std::vector<double> samples);

  const std::vector<double>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double mean() const;
  bool all_distinct() const;

 private:
  std::vector<double> samples_;
};

/// m_f(t) = μ{|f| > t} on t ∈ [0,1), right-continuous.
StepFunction1D distribution_function(const EmpiricalRV& f);
StepFunction1D distribution_function(const StepFunction1D& f);

/// r_f(s) = inf{t : m_f(t) <= s}; for samples, the descending sort with
/// pieces of width 1/M (equal values merged).
StepFunction1D rearrangement(const EmpiricalRV& f);
StepFunction1D rearrangement(const StepFunction1D& f);

inline constexpr double kDefaultQuadratureTol = 1e-9;
inline constexpr int kMaxQuadratureDepth = 40;

/// Adaptive Gauss–Kronrod quadrature of g over [a, b] to absolute
/// tolerance `tol` on the summed error estimate. The interval is split at
/// `breakpoints` first, then the worst panel is bisected until the estimate
/// meets `tol`. Throws ToleranceNotMet.
double integrate(const std::function<double(double)>& g, double a, double b,
                 double tol = kDefaultQuadratureTol, std::span<const double> breakpoints = {});

}  // namespace monoext
