#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "monoext/func1d.hpp"
#include "monoext/rational.hpp"

namespace monoext {

/// Process with non-decreasing trajectories attaining the lower bound for
/// E ξ_τ. Outcomes ω are addressed by their rank fraction y = P(τ <= τ(ω))
/// in (0,1], which is uniformly distributed; τ(y) = r_τ(1 − y).
///
///   ξ*_t(y) = m⁻¹(R(y))                   for t <= τ(y)
///   ξ*_t(y) = m⁻¹(E τ + y − R(y))         for t >  τ(y)
///
/// with R(y) = ∫_{1−y}^1 r_τ(s) ds, the mass of the smallest y-fraction of τ.
class ExtremalProcess {
 public:
  /// Throws InvalidMap unless m is an increasing bijection.
  ExtremalProcess(MonotoneMap1D m, EmpiricalRV tau);

  const MonotoneMap1D& m() const { return m_; }
  const EmpiricalRV& tau() const { return tau_; }
  const StepFunction1D& rearrangement() const { return rearrangement_; }

  double mean() const { return prefix_.back() / static_cast<double>(tau_.size()); }
  /// τ(y) = r_τ(1 − y).
  double quantile(double y) const;
  /// R(y) = ∫_{1−y}^1 r_τ(s) ds.
  double lower_integral(double y) const;

  double lower_branch(double y) const;
  double upper_branch(double y) const;

  /// ξ*_t(y). Throws OutOfDomain.
  double operator()(double t, double y) const;

 private:
  MonotoneMap1D m_;
  EmpiricalRV tau_;
  StepFunction1D rearrangement_;
  std::vector<double> prefix_;  // prefix_[i] = sum of the i smallest samples
};

/// ∫₀¹ m⁻¹(∫_{1−y}^1 r_τ(s) ds) dy. The inner integral is exact.
double expectation_bound(const MonotoneMap1D& m, const EmpiricalRV& tau, double tol = kDefaultQuadratureTol);

/// ∫₀¹ r_τ(s)·s ds, exact on the step function (the m = id case).
double simplified_bound(const EmpiricalRV& tau);

/// |expectation_bound(id, τ) − simplified_bound(τ)|.
double fubini_check(const EmpiricalRV& tau, double tol = kDefaultQuadratureTol);

double eval_extremal_process(const ExtremalProcess& proc, double t, double y);

enum class ExpectationMode { quadrature, montecarlo };

struct Estimate {
  double value = 0;
  double std_error = 0;
  std::size_t trials = 0;
};

/// Trials are split into fixed chunks of this many, each drawing from its own
/// stream seeded with (seed, chunk index).
inline constexpr std::size_t kMonteCarloChunk = 4096;

/// E ξ*_τ. Quadrature integrates y ↦ ξ*_{τ(y)}(y) over [0,1]; Monte Carlo
/// averages the same integrand at uniform draws of y.
Estimate expectation_at_tau(const ExtremalProcess& proc, ExpectationMode mode, std::size_t trials = 0,
                            std::uint64_t seed = 0, double tol = kDefaultQuadratureTol);

using Process = std::function<double(double t, double y)>;

struct ProcessMembershipReport {
  bool passed = false;
  std::size_t grid_t = 0;
  std::size_t grid_y = 0;
  bool monotone = true;
  /// (y, t1, t2) with t1 < t2 but ξ_{t1}(y) > ξ_{t2}(y).
  struct Violation {
    double y, t1, t2, v1, v2;
  };
  std::optional<Violation> monotonicity_violation;
  double max_deviation = 0;  ///< max_s |μ×P̂{ξ <= m⁻¹(s)} − s|
  double worst_s = 0;
  double tolerance = 0;      ///< 2(1/grid_t + 1/grid_y) + sample_resolution
};

/// Grid test of class membership for a process addressed by rank fraction.
ProcessMembershipReport check_process_membership(const Process& xi, const MonotoneMap1D& m, std::size_t grid_t,
                                                 std::size_t grid_y, double sample_resolution);

/// check_process_membership on ξ* with sample resolution 1/M; throws
/// MembershipViolation on failure.
ProcessMembershipReport verify_process_membership(const ExtremalProcess& proc, std::size_t grid_t,
                                                  std::size_t grid_y);
/// Same check on an arbitrary process.
ProcessMembershipReport verify_process_membership(const Process& xi, const MonotoneMap1D& m, std::size_t grid_t,
                                                  std::size_t grid_y, double sample_resolution);

inline constexpr double kDefaultJitter = 1e-9;

/// Spreads tied samples over distinct values less than delta apart, keeping
/// the sorted order and staying inside [0,1); distinct inputs are returned
/// unchanged.
EmpiricalRV jitter_tau(const EmpiricalRV& tau, double delta = kDefaultJitter, std::uint64_t seed = 0);

/// P(Π_ω) = #{η : τ(η) <= τ(ω)} / M for every sample, ascending.
std::vector<double> rank_fractions(const EmpiricalRV& tau);

/// Chain-disjoint grid value: on grid_poset(n, rows) with the scale
/// (m⁻¹(i/n²)) and query nodes (s_v, v), the disjoint-down-set closed form.
/// s must satisfy 1 <= s_1 <= ... <= s_n <= n with n = s.size().
/// Throws InvalidGrid.
Rational x_monotone_discrete_bound(const MonotoneMap1D& m, std::span<const std::size_t> s);
/// Σ_ν m⁻¹((s_1 + ... + s_ν)/n²) evaluated directly.
double x_monotone_closed_form(const MonotoneMap1D& m, std::span<const std::size_t> s);
/// The same sum for m = id, exactly.
Rational x_monotone_closed_form_exact(std::span<const std::size_t> s);

}  // namespace monoext
