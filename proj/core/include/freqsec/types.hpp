#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "freqsec/errors.hpp"

namespace freqsec {

/// One frequency-response product: a power ramp that starts activation_delay
/// seconds after the outage and reaches full output ramp_duration seconds
/// later.
struct FrService {
  std::string id;
  double capacity_max = 0.0;     // MW, upper bound on the allocation decision
  double ramp_duration = 0.0;    // s, time from activation to full delivery
  double activation_delay = 0.0; // s, dead time before the ramp starts
  double headroom_cost = 0.0;    // currency per MW·h of reserved capacity

  double completion_time() const { return activation_delay + ramp_duration; }
};

/// A set of FR services together with the MW committed to each one.
/// After validate_portfolio the services are sorted by completion time.
struct Portfolio {
  std::vector<FrService> services;
  std::vector<double> allocations; // MW, one entry per service

  double total_allocation() const;
};

/// The frequency-security decision point.
struct SystemSnapshot {
  double h_gen = 0.0;    // MW·s, committed-generator inertia
  double h_demand = 0.0; // MW·s, demand-side inertia used deterministically
  double p_loss = 0.0;   // MW, size of the largest infeed loss
  Portfolio portfolio;

  double total_inertia() const { return h_gen + h_demand; }
};

/// Requirement envelope for post-fault frequency.
struct SecuritySpec {
  double f_nominal = 50.0;  // Hz
  double delta_f_max = 0.8; // Hz, admissible nadir deviation
  double rocof_max = 0.5;   // Hz/s
  double p_loss_max = 0.0;  // MW, upper bound on the largest-loss decision
};

/// Gaussian demand-inertia uncertainty and per-constraint confidence levels.
struct ChanceSpec {
  double h_mu = 0.0;  // MW·s, demand-inertia forecast mean
  double sigma = 0.0; // MW·s
  double alpha = 0.99; // nadir confidence
  double eta = 0.99;   // RoCoF confidence
};

struct SecurityReport {
  double rocof_value = 0.0; // Hz/s, |RoCoF| at the fault instant
  bool rocof_ok = false;
  double steady_state_margin = 0.0; // MW
  bool steady_state_ok = false;
  double nadir_time = 0.0;  // s
  double nadir_depth = 0.0; // Hz, absolute deviation at the nadir
  std::size_t nadir_interval = 0;
  bool nadir_ok = false;
  double soc_slack = 0.0; // LHS - RHS of the active nadir cone

  bool all_ok() const { return rocof_ok && steady_state_ok && nadir_ok; }
};

void validate_spec(const SecuritySpec& spec);
void validate_chance(const ChanceSpec& chance);
void validate_snapshot(const SystemSnapshot& snapshot);

/// Sorts services by completion time (stable) and checks every invariant.
/// Throws NonPositiveRamp, NegativeDelay or AllocationOutOfBounds instead of
/// silently repairing bad input. Idempotent.
Portfolio validate_portfolio(Portfolio portfolio);

}  // namespace freqsec
