#pragma once

#include <random>
#include <vector>

#include "freqsec/types.hpp"

namespace freqsec::testing {

/// The four-service validation portfolio used throughout: two undelayed
/// services (3 s and 10 s), a 0.5 s-delayed 5 s service and a 1 s-delayed
/// 8 s service, at the operating point that makes the nadir cone bind.
inline Portfolio reference_portfolio() {
  Portfolio p;
  p.services = {
      {"FR1", 2000.0, 3.0, 0.0, 0.0},
      {"FR2", 2000.0, 10.0, 0.0, 0.0},
      {"FR3", 2000.0, 5.0, 0.5, 0.0},
      {"FR4", 2000.0, 8.0, 1.0, 0.0},
  };
  p.allocations = {200.0, 980.0, 500.0, 600.0};
  return validate_portfolio(std::move(p));
}

inline SystemSnapshot reference_snapshot() {
  SystemSnapshot snap;
  snap.h_gen = 180000.0; // MW·s
  snap.h_demand = 0.0;
  snap.p_loss = 1800.0; // MW
  snap.portfolio = reference_portfolio();
  return snap;
}

inline SecuritySpec reference_spec() {
  SecuritySpec spec;
  spec.f_nominal = 50.0;
  spec.delta_f_max = 0.8;
  spec.rocof_max = 0.5;
  spec.p_loss_max = 1800.0;
  return spec;
}

/// Random feasible snapshot: up to max_services services with random ramps,
/// delays and allocations, loss drawn strictly below the total response.
inline SystemSnapshot random_feasible_snapshot(std::mt19937_64& rng, int max_services = 6,
                                               bool allow_delays = true) {
  std::uniform_int_distribution<int> n_dist(1, max_services);
  std::uniform_real_distribution<double> ramp_dist(1.0, 15.0);
  std::uniform_real_distribution<double> delay_dist(0.0, 2.0);
  std::uniform_real_distribution<double> alloc_dist(50.0, 1200.0);
  std::uniform_real_distribution<double> frac_dist(0.25, 0.95);
  std::uniform_real_distribution<double> h_dist(40000.0, 250000.0);
  std::bernoulli_distribution has_delay(0.5);

  Portfolio p;
  const int n = n_dist(rng);
  for (int s = 0; s < n; ++s) {
    FrService svc;
    svc.id = "S" + std::to_string(s);
    svc.ramp_duration = ramp_dist(rng);
    svc.activation_delay = (allow_delays && has_delay(rng)) ? delay_dist(rng) : 0.0;
    svc.capacity_max = 2000.0;
    p.services.push_back(std::move(svc));
    p.allocations.push_back(alloc_dist(rng));
  }
  SystemSnapshot snap;
  snap.portfolio = validate_portfolio(std::move(p));
  snap.h_gen = h_dist(rng);
  snap.h_demand = 0.0;
  snap.p_loss = frac_dist(rng) * snap.portfolio.total_allocation();
  return snap;
}

}  // namespace freqsec::testing
