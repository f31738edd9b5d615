#include "monoext/func1d.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "monoext/error.hpp"

namespace monoext {

namespace {

constexpr double kDomainSlack = 1e-12;

double clamp_unit(double x, const char* what) {
  if (!(x >= -kDomainSlack && x <= 1.0 + kDomainSlack)) {
    throw OutOfDomain(std::string(what) + " " + std::to_string(x) + " outside [0,1]");
  }
  return std::clamp(x, 0.0, 1.0);
}

}  // namespace

MonotoneMap1D MonotoneMap1D::identity() { return MonotoneMap1D(); }

MonotoneMap1D MonotoneMap1D::power(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw InvalidMap("power exponent must be positive");
  MonotoneMap1D m;
  if (p == 1.0) return m;
  m.kind_ = Kind::power;
  m.exponent_ = p;
  return m;
}

MonotoneMap1D MonotoneMap1D::piecewise_linear(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw InvalidMap("piecewise-linear map needs at least two points");
  if (points.front().first != 0.0 || points.back().first != 1.0) {
    throw InvalidMap("piecewise-linear map must be defined on exactly [0,1]");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [x, y] = points[i];
    if (!std::isfinite(x) || !std::isfinite(y) || y < 0.0 || y > 1.0) {
      throw InvalidMap("piecewise-linear values must lie in [0,1]");
    }
    if (i > 0 && !(x > points[i - 1].first)) throw InvalidMap("breakpoints must be strictly increasing");
    if (i > 0 && y < points[i - 1].second) throw InvalidMap("piecewise-linear map must be non-decreasing");
  }
  MonotoneMap1D m;
  m.kind_ = Kind::piecewise_linear;
  m.points_ = std::move(points);
  return m;
}

MonotoneMap1D MonotoneMap1D::constant(double alpha) {
  return piecewise_linear({{0.0, alpha}, {1.0, alpha}});
}

bool MonotoneMap1D::is_bijection() const {
  if (kind_ != Kind::piecewise_linear) return true;
  if (points_.front().second != 0.0 || points_.back().second != 1.0) return false;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i].second > points_[i - 1].second)) return false;
  }
  return true;
}

double MonotoneMap1D::eval(double x) const {
  x = clamp_unit(x, "argument");
  switch (kind_) {
    case Kind::identity:
      return x;
    case Kind::power:
      return std::pow(x, exponent_);
    case Kind::piecewise_linear: {
      auto it = std::upper_bound(points_.begin(), points_.end(), x,
                                 [](double v, const auto& p) { return v < p.first; });
      if (it == points_.end()) return points_.back().second;
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      return std::lerp(lo.second, hi.second, (x - lo.first) / (hi.first - lo.first));
    }
  }
  return x;
}

double MonotoneMap1D::inverse(double y) const {
  y = clamp_unit(y, "value");
  switch (kind_) {
    case Kind::identity:
      return y;
    case Kind::power:
      if (exponent_ == 2.0) return std::sqrt(y);
      return std::pow(y, 1.0 / exponent_);
    case Kind::piecewise_linear: {
      if (!is_bijection()) throw InvalidMap("inverse requested for a map that is not a bijection");
      auto it = std::lower_bound(points_.begin(), points_.end(), y,
                                 [](const auto& p, double v) { return p.second < v; });
      if (it == points_.begin()) return points_.front().first;
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      return std::lerp(lo.first, hi.first, (y - lo.second) / (hi.second - lo.second));
    }
  }
  return y;
}

std::vector<double> MonotoneMap1D::kinks() const {
  std::vector<double> out;
  if (kind_ == Kind::piecewise_linear) {
    for (std::size_t i = 1; i + 1 < points_.size(); ++i) out.push_back(points_[i].first);
  }
  return out;
}

void require_bijection(const MonotoneMap1D& m, std::string_view role) {
  if (!m.is_bijection()) {
    throw InvalidMap(std::string(role) + " must be an increasing bijection of [0,1]");
  }
}

double bisect_inverse(const std::function<double(double)>& f, double y, double tol) {
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

StepFunction1D::StepFunction1D(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() < 2 || breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
    throw InvalidSamples("step function breakpoints must run from 0 to 1");
  }
  if (values_.size() + 1 != breakpoints_.size()) {
    throw InvalidSamples("step function needs one value per piece");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1])) {
      throw InvalidSamples("step function breakpoints must be strictly increasing");
    }
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidSamples("step function values must lie in [0,1]");
  }
}

bool StepFunction1D::is_non_increasing() const {
  return std::is_sorted(values_.begin(), values_.end(), std::greater<>());
}

bool StepFunction1D::is_non_decreasing() const { return std::is_sorted(values_.begin(), values_.end()); }

double StepFunction1D::eval(double x) const {
  x = clamp_unit(x, "argument");
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  auto idx = static_cast<std::size_t>(it - breakpoints_.begin());
  idx = std::clamp<std::size_t>(idx, 1, values_.size()) - 1;
  return values_[idx];
}

double StepFunction1D::integral(double a, double b) const {
  a = clamp_unit(a, "bound");
  b = clamp_unit(b, "bound");
  if (b < a) return -integral(b, a);
  double total = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double lo = std::max(a, breakpoints_[i]);
    const double hi = std::min(b, breakpoints_[i + 1]);
    if (hi > lo) total += values_[i] * (hi - lo);
  }
  return total;
}

EmpiricalRV::EmpiricalRV(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw InvalidSamples("random variable needs at least one sample");
  for (double v : samples_) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidSamples("samples must lie in [0,1]");
  }
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalRV::mean() const {
  return std::accumulate(samples_.begin(), samples_.end(), 0.0) / static_cast<double>(samples_.size());
}

bool EmpiricalRV::all_distinct() const {
  return std::adjacent_find(samples_.begin(), samples_.end()) == samples_.end();
}

namespace {

// Distinct values in descending order together with μ{f >= value}.
struct Level {
  double value;
  double measure_at_or_above;
};

std::vector<Level> level_profile(std::vector<std::pair<double, double>> value_units, double divisor) {
  std::stable_sort(value_units.begin(), value_units.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<Level> levels;
  double cum_units = 0.0;
  for (std::size_t i = 0; i < value_units.size();) {
    const double v = value_units[i].first;
    for (; i < value_units.size() && value_units[i].first == v; ++i) cum_units += value_units[i].second;
    levels.push_back({v, cum_units / divisor});
  }
  levels.back().measure_at_or_above = 1.0;
  return levels;
}

std::vector<Level> level_profile(const EmpiricalRV& f) {
  std::vector<std::pair<double, double>> vu;
  vu.reserve(f.size());
  for (double v : f.samples()) vu.emplace_back(v, 1.0);
  return level_profile(std::move(vu), static_cast<double>(f.size()));
}

std::vector<Level> level_profile(const StepFunction1D& f) {
  const auto& bp = f.breakpoints();
  const auto& vals = f.values();
  if (f.is_non_increasing()) {
    // μ{f >= v} is read off the breakpoints directly.
    std::vector<Level> levels;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (i + 1 < vals.size() && vals[i + 1] == vals[i]) continue;
      levels.push_back({vals[i], bp[i + 1]});
    }
    return levels;
  }
  std::vector<std::pair<double, double>> vu;
  vu.reserve(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) vu.emplace_back(vals[i], bp[i + 1] - bp[i]);
  return level_profile(std::move(vu), 1.0);
}

StepFunction1D distribution_from_levels(const std::vector<Level>& desc) {
  // Ascending thresholds u_1 < ... < u_K; on [u_i, u_{i+1}) the measure of
  // {f > t} is the measure of the strictly larger levels.
  std::vector<double> bps{0.0};
  std::vector<double> vals;
  const std::size_t k = desc.size();
  auto above = [&](std::size_t j) { return j == 0 ? 0.0 : desc[j - 1].measure_at_or_above; };
  // Piece before the smallest level.
  const double smallest = desc[k - 1].value;
  if (smallest > 0.0) vals.push_back(desc[k - 1].measure_at_or_above);
  for (std::size_t j = k; j-- > 0;) {
    const double u = desc[j].value;
    if (u >= 1.0) break;
    if (u > 0.0) bps.push_back(u);
    vals.push_back(above(j));
  }
  bps.push_back(1.0);
  return StepFunction1D(std::move(bps), std::move(vals));
}

StepFunction1D rearrangement_from_levels(const std::vector<Level>& desc) {
  std::vector<double> bps{0.0};
  std::vector<double> vals;
  for (const auto& level : desc) {
    bps.push_back(level.measure_at_or_above);
    vals.push_back(level.value);
  }
  return StepFunction1D(std::move(bps), std::move(vals));
}

}  // namespace

StepFunction1D distribution_function(const EmpiricalRV& f) { return distribution_from_levels(level_profile(f)); }
StepFunction1D distribution_function(const StepFunction1D& f) {
  return distribution_from_levels(level_profile(f));
}
StepFunction1D rearrangement(const EmpiricalRV& f) { return rearrangement_from_levels(level_profile(f)); }
StepFunction1D rearrangement(const StepFunction1D& f) { return rearrangement_from_levels(level_profile(f)); }

namespace {

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  int depth;
  bool operator<(const Panel& other) const { return error < other.error; }
};

// One Gauss–Kronrod panel. An error estimate at rounding level counts as zero.
Panel make_panel(const std::function<double(double)>& g, double lo, double hi, int depth) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  double l1 = 0.0;
  const double value = gauss_kronrod<double, 15>::integrate(g, lo, hi, 0, 0.0, &error, &l1);
  // The panel error is reported on [-1, 1]; L1 is already scaled.
  double abs_error = error * (hi - lo) / 2.0;
  if (abs_error <= 64.0 * std::numeric_limits<double>::epsilon() * l1) abs_error = 0.0;
  return Panel{lo, hi, value, abs_error, depth};
}

constexpr std::size_t kMaxQuadratureSplits = 1'000'000;

}  // namespace

double integrate(const std::function<double(double)>& g, double a, double b, double tol,
                 std::span<const double> breakpoints) {
  if (!(tol > 0.0)) throw ToleranceNotMet("quadrature tolerance must be positive");
  if (b < a) return -integrate(g, b, a, tol, breakpoints);
  if (b == a) return 0.0;

  std::vector<double> cuts{a};
  for (double x : breakpoints) {
    if (x > a && x < b) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(b);

  // Global refinement: split the panel with the largest error until the
  // summed estimate meets the tolerance.
  std::priority_queue<Panel> panels;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Panel p = make_panel(g, cuts[i], cuts[i + 1], 0);
    error += p.error;
    panels.push(p);
  }
  std::size_t splits = 0;
  auto total_error = [&] {
    double e = 0.0;
    auto copy = panels;
    while (!copy.empty()) {
      e += copy.top().error;
      copy.pop();
    }
    return e;
  };
  while (error > tol) {
    const Panel worst = panels.top();
    if (worst.depth >= kMaxQuadratureDepth || ++splits > kMaxQuadratureSplits) {
      throw ToleranceNotMet("quadrature stalled at error " + std::to_string(error) + " near [" +
                            std::to_string(worst.lo) + ", " + std::to_string(worst.hi) + "]");
    }
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Panel left = make_panel(g, worst.lo, mid, worst.depth + 1);
    const Panel right = make_panel(g, mid, worst.hi, worst.depth + 1);
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    // Refresh the running sum now and then to shed accumulated rounding.
    if (splits % 4096 == 0) error = total_error();
  }

  double total = 0.0;
  while (!panels.empty()) {
    total += panels.top().value;
    panels.pop();
  }
  return total;
}

}  // namespace monoext
