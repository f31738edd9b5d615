#include "monoext/process_bound.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "monoext/discrete_solver.hpp"
#include "monoext/error.hpp"
#include "monoext/poset.hpp"

namespace monoext {

namespace {

constexpr double kRankSlack = 1e-9;

double unit(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

ExtremalProcess::ExtremalProcess(MonotoneMap1D m, EmpiricalRV tau)
    : m_(std::move(m)), tau_(std::move(tau)), rearrangement_(monoext::rearrangement(tau_)) {
  require_bijection(m_, "m");
  prefix_.assign(tau_.size() + 1, 0.0);
  for (std::size_t i = 0; i < tau_.size(); ++i) prefix_[i + 1] = prefix_[i] + tau_.samples()[i];
}

double ExtremalProcess::quantile(double y) const {
  const auto size = tau_.size();
  const double scaled = y * static_cast<double>(size);
  auto idx = static_cast<std::size_t>(std::max(0.0, std::ceil(scaled - kRankSlack)));
  idx = std::clamp<std::size_t>(idx, 1, size);
  return tau_.samples()[idx - 1];
}

double ExtremalProcess::lower_integral(double y) const {
  const auto size = tau_.size();
  const double scaled = unit(y) * static_cast<double>(size);
  const auto i = std::min(static_cast<std::size_t>(scaled), size);
  double mass = prefix_[i];
  if (i < size) mass += (scaled - static_cast<double>(i)) * tau_.samples()[i];
  return mass / static_cast<double>(size);
}

double ExtremalProcess::lower_branch(double y) const { return m_.inverse(unit(lower_integral(y))); }

double ExtremalProcess::upper_branch(double y) const {
  return m_.inverse(unit(mean() + std::max(0.0, y - lower_integral(y))));
}

double ExtremalProcess::operator()(double t, double y) const {
  if (!(t >= 0.0 && t <= 1.0 && y >= 0.0 && y <= 1.0)) {
    throw OutOfDomain("(t, y) = (" + std::to_string(t) + ", " + std::to_string(y) + ") outside [0,1]^2");
  }
  return t <= quantile(y) ? lower_branch(y) : upper_branch(y);
}

double eval_extremal_process(const ExtremalProcess& proc, double t, double y) { return proc(t, y); }

double expectation_bound(const MonotoneMap1D& m, const EmpiricalRV& tau, double tol) {
  const ExtremalProcess proc(m, tau);
  std::vector<double> cuts;
  const auto size = tau.size();
  cuts.reserve(size);
  for (std::size_t i = 1; i < size; ++i) cuts.push_back(static_cast<double>(i) / static_cast<double>(size));
  return integrate([&](double y) { return proc.lower_branch(y); }, 0.0, 1.0, tol, cuts);
}

double simplified_bound(const EmpiricalRV& tau) {
  const auto r = rearrangement(tau);
  const auto& bp = r.breakpoints();
  const auto& v = r.values();
  double total = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) total += v[j] * (bp[j + 1] * bp[j + 1] - bp[j] * bp[j]) / 2.0;
  return total;
}

double fubini_check(const EmpiricalRV& tau, double tol) {
  return std::abs(expectation_bound(MonotoneMap1D::identity(), tau, tol) - simplified_bound(tau));
}

Estimate expectation_at_tau(const ExtremalProcess& proc, ExpectationMode mode, std::size_t trials,
                            std::uint64_t seed, double tol) {
  Estimate est;
  if (mode == ExpectationMode::quadrature) {
    const auto size = proc.tau().size();
    std::vector<double> cuts;
    for (std::size_t i = 1; i < size; ++i) cuts.push_back(static_cast<double>(i) / static_cast<double>(size));
    // t = τ(y) always lies on the lower branch.
    est.value = integrate([&](double y) { return proc.lower_branch(y); }, 0.0, 1.0, tol, cuts);
    return est;
  }

  if (trials == 0) throw InvalidSamples("Monte Carlo needs at least one trial");
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t n = 0;
  const std::size_t chunks = (trials + kMonteCarloChunk - 1) / kMonteCarloChunk;
  for (std::size_t c = 0; c < chunks; ++c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t count = std::min(kMonteCarloChunk, trials - c * kMonteCarloChunk);
    for (std::size_t k = 0; k < count; ++k) {
      // ω is uniform on (0,1]; ties in τ are broken by position.
      const double y = 1.0 - unit(rng);
      const double x = proc(proc.quantile(y), y);
      ++n;
      const double delta = x - mean;
      mean += delta / static_cast<double>(n);
      m2 += delta * (x - mean);
    }
  }
  est.value = mean;
  est.trials = n;
  est.std_error = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
  return est;
}

ProcessMembershipReport check_process_membership(const Process& xi, const MonotoneMap1D& m, std::size_t grid_t,
                                                 std::size_t grid_y, double sample_resolution) {
  if (grid_t < 2 || grid_y < 2) throw InvalidGrid("membership grids need at least 2 cells per side");
  require_bijection(m, "m");

  ProcessMembershipReport report;
  report.grid_t = grid_t;
  report.grid_y = grid_y;
  report.tolerance =
      2.0 * (1.0 / static_cast<double>(grid_t) + 1.0 / static_cast<double>(grid_y)) + sample_resolution;

  const double ht = 1.0 / static_cast<double>(grid_t);
  const double hy = 1.0 / static_cast<double>(grid_y);
  std::vector<double> values;
  values.reserve(grid_t * grid_y);
  for (std::size_t b = 0; b < grid_y; ++b) {
    const double y = (static_cast<double>(b) + 0.5) * hy;
    double prev = 0.0;
    for (std::size_t a = 0; a < grid_t; ++a) {
      const double t = (static_cast<double>(a) + 0.5) * ht;
      const double v = xi(t, y);
      if (a > 0 && v < prev && report.monotone) {
        report.monotone = false;
        report.monotonicity_violation = ProcessMembershipReport::Violation{y, t - ht, t, prev, v};
      }
      prev = v;
      values.push_back(v);
    }
  }

  std::sort(values.begin(), values.end());
  const double cells = static_cast<double>(values.size());
  const std::size_t levels = std::max(grid_t, grid_y);
  for (std::size_t k = 0; k <= levels; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(levels);
    const double level = m.inverse(s);
    const auto below = std::upper_bound(values.begin(), values.end(), level) - values.begin();
    const double dev = std::abs(static_cast<double>(below) / cells - s);
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.worst_s = s;
    }
  }

  report.passed = report.monotone && report.max_deviation <= report.tolerance;
  return report;
}

ProcessMembershipReport verify_process_membership(const ExtremalProcess& proc, std::size_t grid_t,
                                                  std::size_t grid_y) {
  return verify_process_membership([&](double t, double y) { return proc(t, y); }, proc.m(), grid_t, grid_y,
                                   1.0 / static_cast<double>(proc.tau().size()));
}

ProcessMembershipReport verify_process_membership(const Process& xi, const MonotoneMap1D& m, std::size_t grid_t,
                                                  std::size_t grid_y, double sample_resolution) {
  auto report = check_process_membership(xi, m, grid_t, grid_y, sample_resolution);
  if (!report.passed) {
    std::ostringstream msg;
    if (const auto& v = report.monotonicity_violation) {
      msg << "trajectory y = " << v->y << " decreases from " << v->v1 << " at t = " << v->t1 << " to " << v->v2
          << " at t = " << v->t2;
    } else {
      msg << "occupation measure deviates by " << report.max_deviation << " at s = " << report.worst_s
          << " (budget " << report.tolerance << ")";
    }
    throw MembershipViolation(msg.str());
  }
  return report;
}

EmpiricalRV jitter_tau(const EmpiricalRV& tau, double delta, std::uint64_t seed) {
  if (!(delta > 0.0)) throw InvalidSamples("jitter width must be positive");
  if (tau.all_distinct()) return tau;

  std::vector<double> out = tau.samples();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dither(0.0, 1.0);

  for (std::size_t i = 0; i < out.size();) {
    const double v = tau.samples()[i];
    std::size_t j = i;
    while (j < out.size() && tau.samples()[j] == v) ++j;
    const std::size_t count = j - i;
    if (count > 1) {
      // Offsets o_k lie strictly inside (span·k/c, span·(k+1)/c).
      auto offset = [&](std::size_t k, double span) {
        return span * (static_cast<double>(k) + 0.25 + 0.5 * dither(rng)) / static_cast<double>(count);
      };
      if (v < 1.0) {
        const double next = j < out.size() ? tau.samples()[j] : 1.0;
        const double span = std::min(delta, (next - v) / 2.0);
        for (std::size_t k = 0; k < count; ++k) out[i + k] = v + offset(k, span);
      } else {
        const double prev = i > 0 ? tau.samples()[i - 1] : 0.0;
        const double span = std::min(delta, (1.0 - prev) / 2.0);
        for (std::size_t k = 0; k < count; ++k) out[j - 1 - k] = 1.0 - offset(k, span);
      }
    }
    i = j;
  }
  return EmpiricalRV(std::move(out));
}

std::vector<double> rank_fractions(const EmpiricalRV& tau) {
  const auto& s = tau.samples();
  const double size = static_cast<double>(s.size());
  std::vector<double> out;
  out.reserve(s.size());
  for (double v : s) {
    const auto at_most = std::upper_bound(s.begin(), s.end(), v) - s.begin();
    out.push_back(static_cast<double>(at_most) / size);
  }
  return out;
}

namespace {

void check_index_vector(std::span<const std::size_t> s) {
  const std::size_t n = s.size();
  if (n == 0) throw InvalidGrid("index vector must be nonempty");
  for (std::size_t v = 0; v < n; ++v) {
    if (s[v] < 1 || s[v] > n) throw InvalidGrid("indices must lie in 1..n");
    if (v > 0 && s[v] < s[v - 1]) throw InvalidGrid("indices must be non-decreasing");
  }
}

}  // namespace

Rational x_monotone_discrete_bound(const MonotoneMap1D& m, std::span<const std::size_t> s) {
  check_index_vector(s);
  const std::size_t n = s.size();
  const Poset grid = grid_poset(n, GridOrder::rows);
  std::vector<Element> nodes;
  nodes.reserve(n);
  for (std::size_t v = 1; v <= n; ++v) nodes.push_back(grid_element(n, s[v - 1], v));
  const QuerySet query(grid, std::move(nodes));
  return disjoint_closed_form_min(grid, scale_from_m(m, n), query);
}

double x_monotone_closed_form(const MonotoneMap1D& m, std::span<const std::size_t> s) {
  check_index_vector(s);
  const double cells = static_cast<double>(s.size() * s.size());
  std::size_t cum = 0;
  double total = 0.0;
  for (std::size_t v : s) {
    cum += v;
    total += m.inverse(static_cast<double>(cum) / cells);
  }
  return total;
}

Rational x_monotone_closed_form_exact(std::span<const std::size_t> s) {
  check_index_vector(s);
  std::size_t cum = 0;
  std::size_t numerator = 0;
  for (std::size_t v : s) {
    cum += v;
    numerator += cum;
  }
  Rational out(static_cast<unsigned long>(numerator), static_cast<unsigned long>(s.size() * s.size()));
  out.canonicalize();
  return out;
}

}  // namespace monoext
