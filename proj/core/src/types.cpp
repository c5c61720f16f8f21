#include "freqsec/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace freqsec {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NonPositiveRamp: return "NonPositiveRamp";
    case Errc::NegativeDelay: return "NegativeDelay";
    case Errc::AllocationOutOfBounds: return "AllocationOutOfBounds";
    case Errc::EmptyPortfolio: return "EmptyPortfolio";
    case Errc::ZeroInertia: return "ZeroInertia";
    case Errc::SteadyStateInfeasible: return "SteadyStateInfeasible";
    case Errc::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case Errc::UnboundedBigM: return "UnboundedBigM";
    case Errc::NumericalFailure: return "NumericalFailure";
    case Errc::Infeasible: return "Infeasible";
    case Errc::NodeLimit: return "NodeLimit";
    case Errc::StepTooLarge: return "StepTooLarge";
    case Errc::NotConservative: return "NotConservative";
    case Errc::BadInput: return "BadInput";
  }
  return "UnknownError";
}

double Portfolio::total_allocation() const {
  return std::accumulate(allocations.begin(), allocations.end(), 0.0);
}

void validate_spec(const SecuritySpec& spec) {
  if (!(spec.f_nominal > 0.0) || !(spec.delta_f_max > 0.0) || !(spec.rocof_max > 0.0) ||
      !(spec.p_loss_max > 0.0)) {
    throw Error(Errc::BadInput, "security spec fields must be strictly positive");
  }
}

void validate_chance(const ChanceSpec& chance) {
  if (!(chance.sigma >= 0.0)) {
    throw Error(Errc::BadInput, "sigma must be non-negative");
  }
  if (!(chance.alpha > 0.0 && chance.alpha < 1.0)) {
    throw Error(Errc::ProbabilityOutOfRange, "alpha must lie in (0,1)");
  }
  if (!(chance.eta > 0.0 && chance.eta < 1.0)) {
    throw Error(Errc::ProbabilityOutOfRange, "eta must lie in (0,1)");
  }
}

void validate_snapshot(const SystemSnapshot& snapshot) {
  if (!(snapshot.h_gen >= 0.0) || !(snapshot.h_demand >= 0.0)) {
    throw Error(Errc::BadInput, "inertia terms must be non-negative");
  }
  if (!(snapshot.p_loss >= 0.0)) {
    throw Error(Errc::BadInput, "p_loss must be non-negative");
  }
}

Portfolio validate_portfolio(Portfolio portfolio) {
  if (portfolio.allocations.size() != portfolio.services.size()) {
    throw Error(Errc::BadInput, "allocations must have one entry per service");
  }
  for (const FrService& svc : portfolio.services) {
    if (!(svc.ramp_duration > 0.0) || !std::isfinite(svc.ramp_duration)) {
      throw Error(Errc::NonPositiveRamp, "service '" + svc.id + "' has ramp_duration " +
                                             std::to_string(svc.ramp_duration));
    }
    if (!(svc.activation_delay >= 0.0) || !std::isfinite(svc.activation_delay)) {
      throw Error(Errc::NegativeDelay, "service '" + svc.id + "' has activation_delay " +
                                           std::to_string(svc.activation_delay));
    }
    if (!(svc.capacity_max >= 0.0)) {
      throw Error(Errc::BadInput, "service '" + svc.id + "' has negative capacity_max");
    }
  }
  for (std::size_t i = 0; i < portfolio.services.size(); ++i) {
    const double r = portfolio.allocations[i];
    const double cap = portfolio.services[i].capacity_max;
    if (!(r >= 0.0) || r > cap * (1.0 + 1e-12) + 1e-12) {
      throw Error(Errc::AllocationOutOfBounds,
                  "allocation " + std::to_string(r) + " MW for service '" +
                      portfolio.services[i].id + "' outside [0, " + std::to_string(cap) + "]");
    }
  }

  std::vector<std::size_t> order(portfolio.services.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return portfolio.services[a].completion_time() < portfolio.services[b].completion_time();
  });

  Portfolio sorted;
  sorted.services.reserve(order.size());
  sorted.allocations.reserve(order.size());
  for (std::size_t idx : order) {
    sorted.services.push_back(std::move(portfolio.services[idx]));
    sorted.allocations.push_back(portfolio.allocations[idx]);
  }
  return sorted;
}

}  // namespace freqsec
