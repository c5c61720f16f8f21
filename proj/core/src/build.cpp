#include "freqsec/conic/build.hpp"

#include <cmath>

#include "freqsec/dynamics.hpp"
#include "freqsec/security.hpp"

namespace freqsec::conic {

namespace {

void require_finite_bounds(const ConicProgram& program, std::size_t var) {
  const Eigen::Index i = static_cast<Eigen::Index>(var);
  if (!std::isfinite(program.lower[i]) || !std::isfinite(program.upper[i])) {
    throw Error(Errc::UnboundedBigM, "variable '" + program.variable_names[var] +
                                         "' needs finite bounds to derive big-M constants");
  }
}

}  // namespace

std::vector<std::size_t> add_security_constraints(ConicProgram& program,
                                                  const std::vector<FrService>& services,
                                                  const SecuritySpec& spec,
                                                  const std::optional<ChanceSpec>& chance,
                                                  double h_demand, const SecurityVars& vars,
                                                  const std::string& tag,
                                                  double security_margin) {
  if (services.empty()) {
    throw Error(Errc::EmptyPortfolio, "at least one FR service is required");
  }
  if (vars.r.size() != services.size()) {
    throw Error(Errc::BadInput, "one allocation variable per service expected");
  }
  require_finite_bounds(program, vars.h);
  require_finite_bounds(program, vars.p_loss);
  for (std::size_t r : vars.r) require_finite_bounds(program, r);

  // effective demand-side inertia constants per constraint family
  double h_eff_rocof = h_demand;
  double h_eff_nadir = h_demand;
  if (chance) {
    h_eff_rocof = security::chance_adjusted_inertia(0.0, *chance, chance->eta);
    h_eff_nadir = security::chance_adjusted_inertia(0.0, *chance, chance->alpha);
  }

  const Eigen::Index ih = static_cast<Eigen::Index>(vars.h);
  const Eigen::Index ip = static_cast<Eigen::Index>(vars.p_loss);
  auto iv_r = [&](std::size_t s) { return static_cast<Eigen::Index>(vars.r[s]); };

  const double p_hi_bound = program.upper[ip];

  // RoCoF, Eq.-(3) form: P_L*f0/(2*RoCoF_max) - H <= H_D,eff
  {
    LinearRow row;
    row.coefficients = program.zero_row();
    row.coefficients[ip] = spec.f_nominal / (2.0 * spec.rocof_max);
    row.coefficients[ih] = -1.0;
    const double scale = std::max({1.0, std::abs(h_eff_rocof),
                                   p_hi_bound * spec.f_nominal / (2.0 * spec.rocof_max)});
    row.rhs = h_eff_rocof - security_margin * scale;
    row.name = tag + "rocof";
    program.rows.push_back(std::move(row));
  }

  // steady state: P_L - sum_s R_s <= 0
  {
    LinearRow row;
    row.coefficients = program.zero_row();
    row.coefficients[ip] = 1.0;
    for (std::size_t s = 0; s < services.size(); ++s) row.coefficients[iv_r(s)] = -1.0;
    row.rhs = -security_margin * std::max(1.0, p_hi_bound);
    row.name = tag + "steady_state";
    program.rows.push_back(std::move(row));
  }

  // interval structure depends only on delays and ramp durations; decompose
  // keeps caller indices, so no reordering is needed here
  Portfolio shape;
  shape.services = services;
  shape.allocations.assign(services.size(), 0.0);
  validate_portfolio(shape); // parameter checks only, the sorted copy is discarded
  const dynamics::IntervalDecomposition dec = dynamics::decompose(shape);

  const double four_df = 4.0 * spec.delta_f_max;
  // the w scale also applies the tightening: inflating the residual by the
  // relative margin keeps the cone strictly inside the exact one
  const double two_sqrt_df = 2.0 * std::sqrt(spec.delta_f_max) / (1.0 + security_margin);
  const double p_hi = program.upper[ip];
  const double p_lo = program.lower[ip];
  const double h_lo = program.lower[ih];
  auto cap = [&](std::size_t s) { return program.upper[iv_r(s)]; };

  std::vector<std::size_t> selectors;
  for (std::size_t n = 0; n < dec.intervals.size(); ++n) {
    const dynamics::Interval& iv = dec.intervals[n];
    if (iv.ramping.empty()) continue; // a flat segment can never host the crossing
    const std::size_t z =
        program.add_variable(tag + "z_" + std::to_string(n), 0.0, 1.0, true);
    selectors.push_back(z);
    const Eigen::Index izv = static_cast<Eigen::Index>(z);

    // entry: FR(t_start) - P_L <= 0 when selected
    {
      LinearRow row;
      row.coefficients = program.zero_row();
      double big_m = std::max(0.0, -p_lo);
      for (std::size_t s : iv.complete) {
        row.coefficients[iv_r(s)] = 1.0;
        big_m += cap(s);
      }
      for (std::size_t s : iv.ramping) {
        const double ramp_frac =
            (iv.t_start - services[s].activation_delay) / services[s].ramp_duration;
        row.coefficients[iv_r(s)] = ramp_frac;
        big_m += cap(s) * std::max(0.0, ramp_frac);
      }
      row.coefficients[ip] = -1.0;
      row.rhs = 0.0;
      row.name = tag + "entry_" + std::to_string(n);
      program.rows.push_back(std::move(row));
      program.links.push_back(BigMLink{z, program.rows.size() - 1, big_m});
    }

    // exit: P_L - FR(t_end) <= 0 when selected
    {
      LinearRow row;
      row.coefficients = program.zero_row();
      row.coefficients[ip] = 1.0;
      for (std::size_t s : iv.complete) {
        row.coefficients[iv_r(s)] = -1.0;
      }
      for (std::size_t s : iv.ramping) {
        row.coefficients[iv_r(s)] =
            -(iv.t_end - services[s].activation_delay) / services[s].ramp_duration;
      }
      row.rhs = 0.0;
      row.name = tag + "exit_" + std::to_string(n);
      program.rows.push_back(std::move(row));
      program.links.push_back(BigMLink{z, program.rows.size() - 1, std::max(0.0, p_hi)});
    }

    // rotated nadir cone, relaxed on u and v by per-interval constants when
    // the selector is off:
    //   ((H + H_D)/f0 + y1 + Mu(1-z)) * (y2 + Mv(1-z)) >= y3^2
    {
      RsocBlock cone;
      cone.name = tag + "nadir_soc_" + std::to_string(n);
      cone.u_coefficients = program.zero_row();
      cone.v_coefficients = program.zero_row();
      cone.w_coefficients = program.zero_row();

      cone.u_coefficients[ih] = 1.0 / spec.f_nominal;
      cone.u_constant = h_eff_nadir / spec.f_nominal;
      double u_min = (h_lo + h_eff_nadir) / spec.f_nominal;
      double w_pos = p_hi / two_sqrt_df; // largest positive residual
      double w_neg = 0.0;                // largest magnitude on the negative side
      double v_cap = 0.0;
      for (std::size_t s : iv.complete) {
        const FrService& svc = services[s];
        const double u_coef = -(svc.ramp_duration + 2.0 * svc.activation_delay) / four_df;
        cone.u_coefficients[iv_r(s)] = u_coef;
        u_min += u_coef * cap(s);
        cone.w_coefficients[iv_r(s)] = -1.0 / two_sqrt_df;
        w_neg += cap(s) / two_sqrt_df;
      }
      for (std::size_t s : iv.ramping) {
        const FrService& svc = services[s];
        cone.u_coefficients[iv_r(s)] =
            svc.activation_delay * svc.activation_delay / svc.ramp_duration / four_df;
        cone.v_coefficients[iv_r(s)] = 1.0 / svc.ramp_duration;
        v_cap += cap(s) / svc.ramp_duration;
        const double w_coef = svc.activation_delay / svc.ramp_duration / two_sqrt_df;
        cone.w_coefficients[iv_r(s)] = w_coef;
        w_pos += cap(s) * w_coef;
      }
      cone.w_coefficients[ip] = 1.0 / two_sqrt_df;
      w_neg += std::max(0.0, -p_lo) / two_sqrt_df;

      const double w_max = std::max(w_pos, w_neg);
      const double big_m_v = std::max(1.0, v_cap);
      const double big_m_u = std::max(0.0, -u_min) + w_max * w_max / big_m_v;
      cone.u_coefficients[izv] = -big_m_u;
      cone.u_constant += big_m_u;
      cone.v_coefficients[izv] = -big_m_v;
      cone.v_constant += big_m_v;
      program.cones.push_back(std::move(cone));
    }
  }

  // exactly one interval hosts the nadir
  {
    LinearRow row;
    row.coefficients = program.zero_row();
    for (std::size_t z : selectors) row.coefficients[static_cast<Eigen::Index>(z)] = 1.0;
    row.rhs = 1.0;
    row.kind = LinearRow::Kind::Eq;
    row.name = tag + "one_interval";
    program.rows.push_back(std::move(row));
  }
  if (selectors.size() == 1) {
    // degenerate exactly-one: pin the single selector
    program.lower[static_cast<Eigen::Index>(selectors.front())] = 1.0;
  }

  program.interval_selectors.insert(program.interval_selectors.end(), selectors.begin(),
                                    selectors.end());
  return selectors;
}

ConicProgram build_program(const std::vector<FrService>& services, const SecuritySpec& spec,
                           const std::optional<ChanceSpec>& chance,
                           const BuildOptions& options) {
  validate_spec(spec);
  if (chance) validate_chance(*chance);
  if (services.empty()) {
    throw Error(Errc::EmptyPortfolio, "at least one FR service is required");
  }

  ConicProgram program;
  SecurityVars vars;
  vars.h = program.add_variable("H", options.inertia.lower, options.inertia.upper);
  const VarBounds pl =
      options.p_loss.value_or(VarBounds{0.0, spec.p_loss_max});
  vars.p_loss = program.add_variable("P_L", pl.lower, pl.upper);
  for (const FrService& svc : services) {
    vars.r.push_back(program.add_variable("R_" + svc.id, 0.0, svc.capacity_max));
  }

  add_security_constraints(program, services, spec, chance, options.h_demand, vars, "",
                           options.security_margin);

  program.objective[static_cast<Eigen::Index>(vars.h)] = options.inertia_cost;
  program.objective[static_cast<Eigen::Index>(vars.p_loss)] = options.p_loss_cost;
  for (std::size_t s = 0; s < services.size(); ++s) {
    program.objective[static_cast<Eigen::Index>(vars.r[s])] = services[s].headroom_cost;
  }
  return program;
}

}  // namespace freqsec::conic
