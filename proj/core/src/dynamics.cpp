#include "freqsec/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace freqsec::dynamics {

namespace {

// Relative tolerance for breakpoint dedup and crossing decisions; the
// closed-form arithmetic is exact, so this only absorbs float noise.
constexpr double kRelTol = 1e-9;

}  // namespace

IntervalDecomposition decompose(const Portfolio& portfolio) {
  if (portfolio.services.empty()) {
    throw Error(Errc::EmptyPortfolio, "cannot decompose an empty portfolio");
  }

  std::vector<double> points;
  points.reserve(2 * portfolio.services.size());
  double horizon = 0.0;
  for (const FrService& svc : portfolio.services) {
    horizon = std::max(horizon, svc.completion_time());
    if (svc.activation_delay > 0.0) points.push_back(svc.activation_delay);
    points.push_back(svc.completion_time());
  }
  std::sort(points.begin(), points.end());
  const double merge_tol = kRelTol * std::max(horizon, 1.0);

  IntervalDecomposition dec;
  for (double t : points) {
    if (dec.breakpoints.empty() || t - dec.breakpoints.back() > merge_tol) {
      dec.breakpoints.push_back(t);
    }
  }

  double prev = 0.0;
  for (double end : dec.breakpoints) {
    Interval iv;
    iv.t_start = prev;
    iv.t_end = end;
    for (std::size_t i = 0; i < portfolio.services.size(); ++i) {
      const FrService& svc = portfolio.services[i];
      const double r = portfolio.allocations[i];
      if (svc.completion_time() <= prev + merge_tol) {
        iv.complete.push_back(i);
        iv.delivered += r;
      } else if (svc.activation_delay <= prev + merge_tol) {
        iv.ramping.push_back(i);
        iv.slope += r / svc.ramp_duration;
        iv.offset -= r * svc.activation_delay / svc.ramp_duration;
      }
      // otherwise the service activates at or after this interval's end
    }
    iv.offset += iv.delivered;
    dec.intervals.push_back(std::move(iv));
    prev = end;
  }
  return dec;
}

double fr_total(double t, const Portfolio& portfolio) {
  if (t <= 0.0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < portfolio.services.size(); ++i) {
    const FrService& svc = portfolio.services[i];
    const double progress = (t - svc.activation_delay) / svc.ramp_duration;
    total += portfolio.allocations[i] * std::clamp(progress, 0.0, 1.0);
  }
  return total;
}

double fr_integral(double t, const Portfolio& portfolio) {
  if (t <= 0.0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < portfolio.services.size(); ++i) {
    const FrService& svc = portfolio.services[i];
    const double r = portfolio.allocations[i];
    const double ramp_len = std::clamp(t - svc.activation_delay, 0.0, svc.ramp_duration);
    // area under the ramp portion plus the flat portion once complete
    total += r * ramp_len * ramp_len / (2.0 * svc.ramp_duration);
    if (t > svc.completion_time()) {
      total += r * (t - svc.completion_time());
    }
  }
  return total;
}

double delta_f(double t, const SystemSnapshot& snapshot, const SecuritySpec& spec) {
  const double inertia = snapshot.total_inertia();
  if (!(inertia > 0.0)) {
    throw Error(Errc::ZeroInertia, "H + H_D must be strictly positive");
  }
  if (t <= 0.0) return 0.0;
  const double energy = fr_integral(t, snapshot.portfolio) - snapshot.p_loss * t;
  return spec.f_nominal / (2.0 * inertia) * energy;
}

double rocof_initial(const SystemSnapshot& snapshot, const SecuritySpec& spec) {
  const double inertia = snapshot.total_inertia();
  if (!(inertia > 0.0)) {
    throw Error(Errc::ZeroInertia, "H + H_D must be strictly positive");
  }
  return snapshot.p_loss * spec.f_nominal / (2.0 * inertia);
}

Crossing fr_crossing(const IntervalDecomposition& dec, double p_loss) {
  const Interval& last = dec.intervals.back();
  const double total = last.fr_at(last.t_end);
  const double tol = 1e-9 * std::max({p_loss, total, 1.0});

  if (p_loss <= tol) {
    // no deficit: the response covers the loss from the fault instant on
    return Crossing{0.0, 0};
  }
  if (total < p_loss - tol) {
    throw Error(Errc::SteadyStateInfeasible,
                "total FR " + std::to_string(total) + " MW cannot cover loss " +
                    std::to_string(p_loss) + " MW");
  }

  for (std::size_t n = 0; n < dec.intervals.size(); ++n) {
    const Interval& iv = dec.intervals[n];
    if (iv.fr_at(iv.t_end) < p_loss - tol) continue; // still in deficit at interval end
    Crossing cross;
    if (iv.slope <= 0.0) {
      // flat interval already at/above the loss; the touch happened at entry
      cross.time = iv.t_start;
    } else {
      cross.time = std::clamp((p_loss - iv.offset) / iv.slope, iv.t_start, iv.t_end);
    }
    cross.interval = n;
    // left-closed assignment: a crossing exactly on a breakpoint belongs to
    // the interval that starts there (both closed forms coincide at the point)
    if (n + 1 < dec.intervals.size() &&
        iv.t_end - cross.time <= kRelTol * std::max(iv.t_end, 1.0)) {
      cross.interval = n + 1;
    }
    return cross;
  }
  return Crossing{last.t_end, dec.intervals.size() - 1};
}

NadirPoint nadir(const SystemSnapshot& snapshot, const SecuritySpec& spec) {
  const Portfolio& portfolio = snapshot.portfolio;
  const IntervalDecomposition dec = decompose(portfolio);
  const Crossing cross = fr_crossing(dec, snapshot.p_loss);

  NadirPoint point;
  point.time = cross.time;
  point.depth = std::abs(delta_f(cross.time, snapshot, spec));
  point.interval = cross.interval;
  return point;
}

}  // namespace freqsec::dynamics
