#pragma once

#include <optional>
#include <string>
#include <vector>

#include "freqsec/conic/solve.hpp"
#include "freqsec/types.hpp"

namespace freqsec::dispatch {

/// One homogeneous class of thermal units.
struct GenUnit {
  std::string class_label;
  int count = 0;
  double rated_power = 0.0;       // MW per unit
  double min_stable = 0.0;        // MW per unit
  double no_load_cost = 0.0;      // currency per hour per committed unit
  double marginal_cost = 0.0;     // currency per MWh
  double startup_cost = 0.0;      // currency per start
  double inertia_constant = 0.0;  // s
  double max_fr_deliverable = 0.0; // MW per unit
  std::string fr_service_id;      // which catalog product the class can back ("" = none)
  bool must_run = false;          // commitment pinned at count (baseload)
  double part_load_range = 0.0;   // MW per unit the class may run below rated (must_run only)
  int min_up = 0;                 // periods
  int min_down = 0;               // periods
};

struct DispatchCase {
  std::vector<GenUnit> units;
  std::vector<double> demand;         // MW, one entry per period
  std::vector<double> wind_available; // MW, one entry per period
  SecuritySpec spec;
  std::optional<ChanceSpec> chance;
  std::vector<FrService> fr_catalog;
  int periods = 1;
};

struct PeriodSchedule {
  std::vector<int> commitment;       // per unit class
  std::vector<double> dispatch_mw;   // per unit class, aggregate
  double wind_used = 0.0;            // MW
  double curtailment = 0.0;          // MW
  std::vector<double> allocations;   // per catalog service, MW
  double h_gen = 0.0;                // MW·s
  double p_loss = 0.0;               // MW, equals the largest scheduled infeed
  SecurityReport security;
};

struct Schedule {
  std::vector<PeriodSchedule> periods;
  double total_cost = 0.0;
  double duality_gap = 0.0;
  long node_count = 0;
  conic::SolveResult::Status status = conic::SolveResult::Status::Infeasible;
};

struct DispatchOptions {
  double gap = 0.005;
  conic::MiOptions mi;          // node limit and IPM settings
  bool use_enumeration = false; // single-period, interval-only programs
  bool include_security = true; // frequency constraints on/off (cost-split studies)
};

void validate_case(const DispatchCase& c);

/// Frequency-secured unit commitment and dispatch over one or more periods.
/// Throws Infeasible-coded errors naming the first violated requirement.
Schedule solve_dispatch(const DispatchCase& c, const DispatchOptions& options = {});

struct SweepPoint {
  double value = 0.0;
  double cost = 0.0;
  double curtailment = 0.0; // MW summed over periods
  double rocof_margin = 0.0;
  double steady_state_margin = 0.0;
  double soc_slack = 0.0;
  bool feasible = false;
};

struct SweepResult {
  std::string axis;
  std::vector<SweepPoint> points;
  bool monotone_expected = false;
  bool monotone_observed = false; // non-decreasing or non-increasing per axis direction
};

/// Re-solves the case along one named axis:
///   "activation_delay:<service>"  delay of one catalog service (cost non-decreasing)
///   "provider_fraction:<class>:<service>"  share of a class backing a faster product
///   "sigma"  demand-inertia forecast error, absolute MW·s (cost non-decreasing)
///   "wind_scale"  multiplier on wind availability
/// Points solve concurrently, capped by FREQSEC_THREADS.
SweepResult sweep(const DispatchCase& c, const std::string& axis,
                  const std::vector<double>& values, const DispatchOptions& options = {});

}  // namespace freqsec::dispatch
