#pragma once

#include <cstddef>
#include <vector>

#include "freqsec/types.hpp"

namespace freqsec::dynamics {

/// One segment of the piecewise-affine aggregate response. Within
/// (t_start, t_end], FR(t) = delivered - sum_L R_l*T_del,l/T_l + slope*t:
/// the services in `complete` are fully delivered, the ones in `ramping`
/// contribute their ramp, everything else has not activated yet.
struct Interval {
  double t_start = 0.0;
  double t_end = 0.0;
  std::vector<std::size_t> complete; // indices into the sorted portfolio (set K)
  std::vector<std::size_t> ramping;  // set L
  double slope = 0.0;     // MW/s, sum of R_l/T_l over ramping services
  double delivered = 0.0; // MW, sum of R_k over complete services
  double offset = 0.0;    // MW, delivered - sum of R_l*T_del,l/T_l

  double fr_at(double t) const { return offset + slope * t; }
};

/// Breakpoint decomposition of FR(t): every activation delay and completion
/// time becomes an interval boundary, deduplicated, covering (0, T_last].
struct IntervalDecomposition {
  std::vector<double> breakpoints; // strictly increasing, ends at max completion time
  std::vector<Interval> intervals; // one per breakpoint, intervals[i] ends at breakpoints[i]
};

IntervalDecomposition decompose(const Portfolio& portfolio);

/// Earliest time where the aggregate response reaches p_loss, together with
/// the left-closed interval index containing it. Throws SteadyStateInfeasible
/// when the response never gets there.
struct Crossing {
  double time = 0.0;
  std::size_t interval = 0;
};
Crossing fr_crossing(const IntervalDecomposition& dec, double p_loss);

/// Aggregate delivered response at time t since the fault (t < 0 gives 0).
double fr_total(double t, const Portfolio& portfolio);

/// Cumulative delivered energy: integral of fr_total over [0, t] (MW·s).
double fr_integral(double t, const Portfolio& portfolio);

/// Closed-form frequency deviation at time t, from integrating the swing
/// equation interval by interval. Negative while the system is in deficit.
double delta_f(double t, const SystemSnapshot& snapshot, const SecuritySpec& spec);

/// Magnitude of the rate of change of frequency at the fault instant.
double rocof_initial(const SystemSnapshot& snapshot, const SecuritySpec& spec);

struct NadirPoint {
  double time = 0.0;        // s, earliest instant where FR(t) >= P_L
  double depth = 0.0;       // Hz, |delta_f| at that instant
  std::size_t interval = 0; // decomposition segment containing the nadir
};

/// Locates the frequency nadir. Throws SteadyStateInfeasible when total
/// allocation cannot cover the loss (the frequency never recovers).
NadirPoint nadir(const SystemSnapshot& snapshot, const SecuritySpec& spec);

}  // namespace freqsec::dynamics
