#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "freqsec/types.hpp"

namespace freqsec::sim {

/// Dynamic model of one FR provider in the time-domain validation.
/// DelayedRamp injects exactly the ramp assumed by the closed-form
/// constraints; DroopLag runs a deadband -> droop gain -> first-order lag ->
/// saturation chain on the frequency deviation.
struct ProviderDynamics {
  enum class Kind { DelayedRamp, DroopLag };
  Kind kind = Kind::DelayedRamp;
  std::string id;
  double capacity = 0.0; // MW: full delivery for the ramp, saturation for the droop

  // DelayedRamp parameters
  double ramp_duration = 0.0;    // s
  double activation_delay = 0.0; // s

  // DroopLag parameters
  double droop_gain = 0.0;        // MW/Hz
  double lag_time_constant = 0.0; // s
  double deadband = 0.0;          // Hz

  static ProviderDynamics delayed_ramp(const FrService& service, double allocation);
  static ProviderDynamics droop_lag(std::string id, double gain, double lag, double saturation,
                                    double deadband);
};

struct SimConfig {
  double dt = 1e-3;     // s, fixed step
  double t_end = 30.0;  // s
  double damping = 0.0; // MW/Hz, load damping D
  enum class Integrator { RK4, Euler } integrator = Integrator::RK4;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> delta_f;                 // Hz
  std::vector<std::vector<double>> fr_by_provider; // MW, one series per provider
  std::vector<double> fr_total;                // MW
  std::vector<std::string> provider_ids;
  std::vector<double> activation_times; // s, first instant each provider injects power (-1 never)
  double nadir_time = 0.0;
  double nadir_depth = 0.0; // Hz, absolute value of the minimum deviation
};

/// Fixed-step integration of the swing equation with damping and the given
/// provider dynamics. Throws StepTooLarge when dt cannot resolve a droop lag.
Trajectory simulate(const SystemSnapshot& snapshot, const SecuritySpec& spec,
                    const std::vector<ProviderDynamics>& providers, const SimConfig& config);

struct ConservativenessReport {
  double closed_form_depth = 0.0; // Hz
  double simulated_depth = 0.0;   // Hz
  double margin = 0.0;            // closed-form minus simulated, >= 0 when conservative
  Trajectory trajectory;
};

/// Checks that the closed-form nadir bounds the simulated one from above.
/// Throws NotConservative naming the providers that deliver less than their
/// assumed ramp before the simulated nadir.
ConservativenessReport validate_conservativeness(const SystemSnapshot& snapshot,
                                                 const SecuritySpec& spec,
                                                 const std::vector<ProviderDynamics>& providers,
                                                 const SimConfig& config);

/// CSV export: header `t,delta_f,fr_total,fr_<id>...`, one row per sample,
/// and a trailing comment footer with the refined nadir.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);

}  // namespace freqsec::sim
