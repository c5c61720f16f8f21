#pragma once

#include <cstddef>
#include <optional>

#include "freqsec/dynamics.hpp"
#include "freqsec/types.hpp"

namespace freqsec::security {

/// RoCoF margin in MW·s: (H + H_D) - P_L*f0/(2*RoCoF_max). Satisfied iff >= 0.
double check_rocof(const SystemSnapshot& snapshot, const SecuritySpec& spec);

/// Steady-state margin in MW: total allocation minus the loss. Satisfied iff >= 0.
double check_steady_state(const Portfolio& portfolio, double p_loss);

/// The unique decomposition segment whose boundary responses bracket the loss.
std::size_t nadir_interval_conditions(const Portfolio& portfolio, double p_loss);

/// Terms of the rotated second-order cone that encodes the nadir requirement
/// for one candidate interval. The cone test is
///   ((H + H_D)/f0 + y1) * y2 >= y3_sq.
struct NadirSocTerms {
  double y1 = 0.0;    // inertia adjustment from completed and delayed services
  double y2 = 0.0;    // MW/s, aggregate ramp slope over the interval
  double y3_sq = 0.0; // squared residual loss over 4*delta_f_max

  double lhs(double inertia, double f_nominal) const { return (inertia / f_nominal + y1) * y2; }
  double slack(double inertia, double f_nominal) const { return lhs(inertia, f_nominal) - y3_sq; }
};

NadirSocTerms nadir_soc_terms(const Portfolio& portfolio, double p_loss,
                              const SecuritySpec& spec, std::size_t interval);

/// Inverse standard normal CDF, |Phi(result) - p| <= 1e-9.
double normal_inv_cdf(double p);

/// Standard normal CDF (complementary-error-function evaluation).
double normal_cdf(double x);

/// Effective inertia H + H_mu - Phi^{-1}(p)*sigma that turns the probabilistic
/// RoCoF/nadir requirements into their deterministic counterparts. May be
/// negative for large sigma; callers must not clamp it.
double chance_adjusted_inertia(double h_gen, const ChanceSpec& chance, double p);

/// Full deterministic or chance-constrained assessment. With a ChanceSpec the
/// RoCoF check uses the eta-adjusted inertia and the nadir check the
/// alpha-adjusted one; the steady-state check has no inertia term and stays
/// deterministic.
SecurityReport assess(const SystemSnapshot& snapshot, const SecuritySpec& spec,
                      const std::optional<ChanceSpec>& chance = std::nullopt);

}  // namespace freqsec::security
