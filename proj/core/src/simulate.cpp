#include "freqsec/simulate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "freqsec/dynamics.hpp"

namespace freqsec::sim {

ProviderDynamics ProviderDynamics::delayed_ramp(const FrService& service, double allocation) {
  ProviderDynamics p;
  p.kind = Kind::DelayedRamp;
  p.id = service.id;
  p.capacity = allocation;
  p.ramp_duration = service.ramp_duration;
  p.activation_delay = service.activation_delay;
  return p;
}

ProviderDynamics ProviderDynamics::droop_lag(std::string id, double gain, double lag,
                                             double saturation, double deadband) {
  ProviderDynamics p;
  p.kind = Kind::DroopLag;
  p.id = std::move(id);
  p.capacity = saturation;
  p.droop_gain = gain;
  p.lag_time_constant = lag;
  p.deadband = deadband;
  return p;
}

namespace {

// state layout: [delta_f, lag outputs of the droop providers in order]
struct Model {
  const SystemSnapshot* snapshot;
  const SecuritySpec* spec;
  const std::vector<ProviderDynamics>* providers;
  double damping;
  std::vector<int> lag_slot; // state index per provider, -1 for ramps

  double provider_output(const ProviderDynamics& p, double t,
                         const std::vector<double>& state, int slot) const {
    if (p.kind == ProviderDynamics::Kind::DelayedRamp) {
      const double progress = (t - p.activation_delay) / p.ramp_duration;
      return p.capacity * std::clamp(progress, 0.0, 1.0);
    }
    return std::clamp(state[static_cast<std::size_t>(slot)], 0.0, p.capacity);
  }

  void derivatives(double t, const std::vector<double>& state, std::vector<double>& dstate) const {
    const double df = state[0];
    double fr = 0.0;
    for (std::size_t k = 0; k < providers->size(); ++k) {
      const ProviderDynamics& p = (*providers)[k];
      fr += provider_output(p, t, state, lag_slot[k]);
      if (p.kind == ProviderDynamics::Kind::DroopLag) {
        const double drop = -df;
        const double error = std::max(0.0, drop - p.deadband);
        const double demand = p.droop_gain * error;
        dstate[static_cast<std::size_t>(lag_slot[k])] =
            (demand - state[static_cast<std::size_t>(lag_slot[k])]) / p.lag_time_constant;
      }
    }
    const double inertia = snapshot->total_inertia();
    dstate[0] = spec->f_nominal / (2.0 * inertia) *
                (fr - snapshot->p_loss - damping * df);
  }
};

// cubic Hermite refinement of the sampled minimum using stored derivatives;
// keeps the recorded nadir at the integrator's own order instead of the
// sampling granularity
std::pair<double, double> refine_minimum(const std::vector<double>& t,
                                         const std::vector<double>& y,
                                         const std::vector<double>& dy, std::size_t i_min) {
  double best_t = t[i_min];
  double best_y = y[i_min];
  const std::size_t lo = (i_min == 0) ? 0 : i_min - 1;
  const std::size_t hi = std::min(i_min + 1, t.size() - 1);
  for (std::size_t i = lo; i < hi; ++i) {
    const double h = t[i + 1] - t[i];
    const double y0 = y[i], y1 = y[i + 1], d0 = dy[i] * h, d1 = dy[i + 1] * h;
    // h'(s) = 0 with h the cubic Hermite on s in [0,1]
    const double a = 3.0 * (2.0 * y0 - 2.0 * y1 + d0 + d1);
    const double b = 2.0 * (-3.0 * y0 + 3.0 * y1 - 2.0 * d0 - d1);
    const double c = d0;
    std::vector<double> roots;
    if (std::abs(a) < 1e-300) {
      if (std::abs(b) > 0.0) roots.push_back(-c / b);
    } else {
      const double disc = b * b - 4.0 * a * c;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        roots.push_back((-b + sq) / (2.0 * a));
        roots.push_back((-b - sq) / (2.0 * a));
      }
    }
    for (double s : roots) {
      if (!(s > 0.0 && s < 1.0)) continue;
      const double s2 = s * s, s3 = s2 * s;
      const double value = (2.0 * s3 - 3.0 * s2 + 1.0) * y0 + (s3 - 2.0 * s2 + s) * d0 +
                           (-2.0 * s3 + 3.0 * s2) * y1 + (s3 - s2) * d1;
      if (value < best_y) {
        best_y = value;
        best_t = t[i] + s * h;
      }
    }
  }
  return {best_t, best_y};
}

}  // namespace

Trajectory simulate(const SystemSnapshot& snapshot, const SecuritySpec& spec,
                    const std::vector<ProviderDynamics>& providers, const SimConfig& config) {
  if (!(config.dt > 0.0) || !(config.t_end > config.dt)) {
    throw Error(Errc::BadInput, "need dt > 0 and t_end > dt");
  }
  if (!(snapshot.total_inertia() > 0.0)) {
    throw Error(Errc::ZeroInertia, "H + H_D must be strictly positive");
  }
  for (const ProviderDynamics& p : providers) {
    if (p.kind == ProviderDynamics::Kind::DroopLag) {
      if (!(p.lag_time_constant > 0.0)) {
        throw Error(Errc::BadInput, "droop provider '" + p.id + "' needs a positive lag");
      }
      if (config.dt > p.lag_time_constant / 10.0) {
        throw Error(Errc::StepTooLarge, "dt " + std::to_string(config.dt) +
                                            " s cannot resolve the " +
                                            std::to_string(p.lag_time_constant) +
                                            " s lag of provider '" + p.id + "'");
      }
    } else if (!(p.ramp_duration > 0.0)) {
      throw Error(Errc::NonPositiveRamp, "ramp provider '" + p.id + "'");
    }
  }

  Model model{&snapshot, &spec, &providers, config.damping, {}};
  int slots = 1;
  for (const ProviderDynamics& p : providers) {
    model.lag_slot.push_back(p.kind == ProviderDynamics::Kind::DroopLag ? slots++ : -1);
  }

  const std::size_t steps = static_cast<std::size_t>(std::ceil(config.t_end / config.dt));
  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.delta_f.reserve(steps + 1);
  traj.fr_total.reserve(steps + 1);
  traj.fr_by_provider.assign(providers.size(), {});
  traj.activation_times.assign(providers.size(), -1.0);
  for (const ProviderDynamics& p : providers) traj.provider_ids.push_back(p.id);

  std::vector<double> state(static_cast<std::size_t>(slots), 0.0);
  std::vector<double> k1(state.size()), k2(state.size()), k3(state.size()), k4(state.size());
  std::vector<double> tmp(state.size());
  std::vector<double> dfdt; // swing derivative at samples, for nadir refinement
  dfdt.reserve(steps + 1);

  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.delta_f.push_back(state[0]);
    double total = 0.0;
    for (std::size_t k = 0; k < providers.size(); ++k) {
      const double out = model.provider_output(providers[k], t, state, model.lag_slot[k]);
      traj.fr_by_provider[k].push_back(out);
      total += out;
      if (traj.activation_times[k] < 0.0 && out > 1e-9 * std::max(1.0, providers[k].capacity)) {
        traj.activation_times[k] = t;
      }
    }
    traj.fr_total.push_back(total);
    model.derivatives(t, state, tmp);
    dfdt.push_back(tmp[0]);
  };

  record(0.0);
  for (std::size_t step = 0; step < steps; ++step) {
    const double t = static_cast<double>(step) * config.dt;
    const double dt = config.dt;
    if (config.integrator == SimConfig::Integrator::Euler) {
      model.derivatives(t, state, k1);
      for (std::size_t j = 0; j < state.size(); ++j) state[j] += dt * k1[j];
    } else {
      model.derivatives(t, state, k1);
      for (std::size_t j = 0; j < state.size(); ++j) tmp[j] = state[j] + 0.5 * dt * k1[j];
      model.derivatives(t + 0.5 * dt, tmp, k2);
      for (std::size_t j = 0; j < state.size(); ++j) tmp[j] = state[j] + 0.5 * dt * k2[j];
      model.derivatives(t + 0.5 * dt, tmp, k3);
      for (std::size_t j = 0; j < state.size(); ++j) tmp[j] = state[j] + dt * k3[j];
      model.derivatives(t + dt, tmp, k4);
      for (std::size_t j = 0; j < state.size(); ++j) {
        state[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      }
    }
    record(static_cast<double>(step + 1) * config.dt);
  }

  const auto min_it = std::min_element(traj.delta_f.begin(), traj.delta_f.end());
  const std::size_t i_min = static_cast<std::size_t>(min_it - traj.delta_f.begin());
  const auto [nadir_t, nadir_v] = refine_minimum(traj.times, traj.delta_f, dfdt, i_min);
  traj.nadir_time = nadir_t;
  traj.nadir_depth = std::abs(std::min(nadir_v, 0.0));
  return traj;
}

ConservativenessReport validate_conservativeness(const SystemSnapshot& snapshot,
                                                 const SecuritySpec& spec,
                                                 const std::vector<ProviderDynamics>& providers,
                                                 const SimConfig& config) {
  ConservativenessReport report;
  report.closed_form_depth = dynamics::nadir(snapshot, spec).depth;
  report.trajectory = simulate(snapshot, spec, providers, config);
  report.simulated_depth = report.trajectory.nadir_depth;
  report.margin = report.closed_form_depth - report.simulated_depth;

  if (report.simulated_depth > report.closed_form_depth + 1e-6) {
    // identify providers that fall short of their assumed ramp envelope
    // before the simulated nadir
    std::string offenders;
    const Portfolio& pf = snapshot.portfolio;
    for (std::size_t k = 0; k < providers.size(); ++k) {
      const ProviderDynamics& p = providers[k];
      const FrService* svc = nullptr;
      double allocation = 0.0;
      for (std::size_t s = 0; s < pf.services.size(); ++s) {
        if (pf.services[s].id == p.id) {
          svc = &pf.services[s];
          allocation = pf.allocations[s];
          break;
        }
      }
      if (!svc) continue;
      for (std::size_t i = 0; i < report.trajectory.times.size(); ++i) {
        const double t = report.trajectory.times[i];
        if (t > report.trajectory.nadir_time) break;
        const double envelope =
            allocation *
            std::clamp((t - svc->activation_delay) / svc->ramp_duration, 0.0, 1.0);
        if (report.trajectory.fr_by_provider[k][i] <
            envelope - 1e-6 * std::max(1.0, allocation)) {
          offenders += (offenders.empty() ? "" : ", ") + p.id + " (first shortfall at t=" +
                       std::to_string(t) + " s)";
          break;
        }
      }
    }
    throw Error(Errc::NotConservative,
                "simulated nadir " + std::to_string(report.simulated_depth) +
                    " Hz exceeds closed-form " + std::to_string(report.closed_form_depth) +
                    " Hz; under-delivering providers: " +
                    (offenders.empty() ? "none identified" : offenders));
  }
  return report;
}

namespace {

std::string shortest(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
  out << "t,delta_f,fr_total";
  for (const std::string& id : trajectory.provider_ids) out << ",fr_" << id;
  out << "\n";
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    out << shortest(trajectory.times[i]) << ',' << shortest(trajectory.delta_f[i]) << ','
        << shortest(trajectory.fr_total[i]);
    for (const auto& series : trajectory.fr_by_provider) out << ',' << shortest(series[i]);
    out << "\n";
  }
  out << "# nadir_time=" << shortest(trajectory.nadir_time)
      << " nadir_depth=" << shortest(trajectory.nadir_depth) << "\n";
}

}  // namespace freqsec::sim
