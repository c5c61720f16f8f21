#include "freqsec/dispatch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "freqsec/conic/build.hpp"
#include "freqsec/security.hpp"

namespace freqsec::dispatch {

namespace {

// relative tightening of the in-program security rows so returned schedules
// pass the exact assessment despite solver-tolerance noise
constexpr double kSecurityMargin = 1e-6;

int bits_needed(int count) {
  int bits = 0;
  while ((1 << bits) - 1 < count) ++bits;
  return std::max(bits, 1);
}

std::size_t npos_var() { return std::numeric_limits<std::size_t>::max(); }

struct Layout {
  // [period][class]
  std::vector<std::vector<std::size_t>> n, p, r, start, stop;
  std::vector<std::vector<std::vector<std::size_t>>> bits;
  // [period][service]
  std::vector<std::vector<std::size_t>> alloc;
  // [period]
  std::vector<std::size_t> wind, h, p_loss;
};

}  // namespace

void validate_case(const DispatchCase& c) {
  if (c.periods < 1 || c.periods > 48) {
    throw Error(Errc::BadInput, "periods must lie in [1, 48]");
  }
  if (c.demand.size() != static_cast<std::size_t>(c.periods) ||
      c.wind_available.size() != static_cast<std::size_t>(c.periods)) {
    throw Error(Errc::BadInput, "demand and wind_available need one entry per period");
  }
  validate_spec(c.spec);
  if (c.chance) validate_chance(*c.chance);
  if (c.fr_catalog.empty()) {
    throw Error(Errc::EmptyPortfolio, "fr_catalog must name at least one service");
  }
  Portfolio probe;
  probe.services = c.fr_catalog;
  probe.allocations.assign(c.fr_catalog.size(), 0.0);
  validate_portfolio(probe);
  double fleet_capacity = 0.0;
  for (const GenUnit& unit : c.units) {
    if (unit.count < 0 || unit.rated_power <= 0.0 || unit.min_stable > unit.rated_power) {
      throw Error(Errc::BadInput, "unit class '" + unit.class_label + "' is inconsistent");
    }
    if (!unit.fr_service_id.empty()) {
      bool found = false;
      for (const FrService& svc : c.fr_catalog) found |= (svc.id == unit.fr_service_id);
      if (!found) {
        throw Error(Errc::BadInput, "class '" + unit.class_label +
                                        "' references unknown FR service '" +
                                        unit.fr_service_id + "'");
      }
    }
    fleet_capacity += unit.count * unit.rated_power;
  }
  for (int t = 0; t < c.periods; ++t) {
    if (!(c.demand[t] > 0.0)) throw Error(Errc::BadInput, "demand must be positive");
    if (c.demand[t] > fleet_capacity + c.wind_available[t]) {
      throw Error(Errc::Infeasible,
                  "period " + std::to_string(t) + ": demand " + std::to_string(c.demand[t]) +
                      " MW exceeds fleet capacity plus wind");
    }
  }
}

namespace {

conic::ConicProgram build_dispatch_program(const DispatchCase& c, const DispatchOptions& options,
                                           Layout& layout) {
  conic::ConicProgram prog;
  const std::size_t n_class = c.units.size();
  const std::size_t n_svc = c.fr_catalog.size();
  const int T = c.periods;

  layout.n.assign(T, std::vector<std::size_t>(n_class, npos_var()));
  layout.p = layout.n;
  layout.r = layout.n;
  layout.start = layout.n;
  layout.stop = layout.n;
  layout.bits.assign(T, std::vector<std::vector<std::size_t>>(n_class));
  layout.alloc.assign(T, std::vector<std::size_t>(n_svc, npos_var()));
  layout.wind.assign(T, npos_var());
  layout.h.assign(T, npos_var());
  layout.p_loss.assign(T, npos_var());

  for (int t = 0; t < T; ++t) {
    const std::string tg = "t" + std::to_string(t) + "_";
    for (std::size_t g = 0; g < n_class; ++g) {
      const GenUnit& unit = c.units[g];
      const std::string cg = tg + unit.class_label + "_";
      const double count = unit.count;

      if (unit.must_run) {
        layout.n[t][g] = prog.add_variable(cg + "n", count, count);
      } else {
        layout.n[t][g] = prog.add_variable(cg + "n", 0.0, count);
        const int nbits = bits_needed(unit.count);
        conic::LinearRow link;
        link.coefficients = prog.zero_row();
        for (int k = 0; k < nbits; ++k) {
          const std::size_t bit =
              prog.add_variable(cg + "bit" + std::to_string(k), 0.0, 1.0, true);
          layout.bits[t][g].push_back(bit);
          link.coefficients.conservativeResize(prog.num_variables());
          link.coefficients[static_cast<Eigen::Index>(bit)] = -double(1 << k);
        }
        link.coefficients.conservativeResize(prog.num_variables());
        link.coefficients[static_cast<Eigen::Index>(layout.n[t][g])] = 1.0;
        link.rhs = 0.0;
        link.kind = conic::LinearRow::Kind::Eq;
        link.name = cg + "count_encoding";
        prog.rows.push_back(std::move(link));
      }

      // aggregate class output
      double p_lo = 0.0;
      double p_hi = count * unit.rated_power;
      if (unit.must_run) {
        const double floor_per_unit =
            (unit.part_load_range > 0.0)
                ? std::max(unit.min_stable, unit.rated_power - unit.part_load_range)
                : unit.rated_power;
        p_lo = count * floor_per_unit;
      }
      layout.p[t][g] = prog.add_variable(cg + "p", p_lo, p_hi);

      if (!unit.must_run) {
        conic::LinearRow cap_row; // p <= rated * n
        cap_row.coefficients = prog.zero_row();
        cap_row.coefficients[static_cast<Eigen::Index>(layout.p[t][g])] = 1.0;
        cap_row.coefficients[static_cast<Eigen::Index>(layout.n[t][g])] = -unit.rated_power;
        cap_row.name = cg + "capacity";
        prog.rows.push_back(std::move(cap_row));

        conic::LinearRow stable_row; // min_stable * n <= p
        stable_row.coefficients = prog.zero_row();
        stable_row.coefficients[static_cast<Eigen::Index>(layout.n[t][g])] = unit.min_stable;
        stable_row.coefficients[static_cast<Eigen::Index>(layout.p[t][g])] = -1.0;
        stable_row.name = cg + "min_stable";
        prog.rows.push_back(std::move(stable_row));
      }

      if (!unit.fr_service_id.empty() && unit.max_fr_deliverable > 0.0) {
        layout.r[t][g] = prog.add_variable(cg + "r", 0.0, count * unit.max_fr_deliverable);
        conic::LinearRow fr_cap; // r <= max_fr * n
        fr_cap.coefficients = prog.zero_row();
        fr_cap.coefficients[static_cast<Eigen::Index>(layout.r[t][g])] = 1.0;
        fr_cap.coefficients[static_cast<Eigen::Index>(layout.n[t][g])] =
            -unit.max_fr_deliverable;
        fr_cap.name = cg + "fr_capability";
        prog.rows.push_back(std::move(fr_cap));

        conic::LinearRow headroom; // r + p <= rated * n
        headroom.coefficients = prog.zero_row();
        headroom.coefficients[static_cast<Eigen::Index>(layout.r[t][g])] = 1.0;
        headroom.coefficients[static_cast<Eigen::Index>(layout.p[t][g])] = 1.0;
        headroom.coefficients[static_cast<Eigen::Index>(layout.n[t][g])] = -unit.rated_power;
        headroom.name = cg + "headroom";
        prog.rows.push_back(std::move(headroom));
      }
    }

    layout.wind[t] = prog.add_variable(tg + "wind", 0.0, c.wind_available[t]);
    double h_cap = 0.0;
    for (const GenUnit& unit : c.units) {
      h_cap += unit.count * unit.inertia_constant * unit.rated_power;
    }
    layout.h[t] = prog.add_variable(tg + "H", 0.0, h_cap);
    layout.p_loss[t] = prog.add_variable(tg + "P_L", 0.0, c.spec.p_loss_max);

    // power balance
    {
      conic::LinearRow row;
      row.coefficients = prog.zero_row();
      for (std::size_t g = 0; g < n_class; ++g) {
        row.coefficients[static_cast<Eigen::Index>(layout.p[t][g])] = 1.0;
      }
      row.coefficients[static_cast<Eigen::Index>(layout.wind[t])] = 1.0;
      row.rhs = c.demand[t];
      row.kind = conic::LinearRow::Kind::Eq;
      row.name = tg + "power_balance";
      prog.rows.push_back(std::move(row));
    }

    // inertia aggregation H = sum_g Hc * Pmax * n
    {
      conic::LinearRow row;
      row.coefficients = prog.zero_row();
      row.coefficients[static_cast<Eigen::Index>(layout.h[t])] = 1.0;
      for (std::size_t g = 0; g < n_class; ++g) {
        row.coefficients[static_cast<Eigen::Index>(layout.n[t][g])] =
            -c.units[g].inertia_constant * c.units[g].rated_power;
      }
      row.rhs = 0.0;
      row.kind = conic::LinearRow::Kind::Eq;
      row.name = tg + "inertia";
      prog.rows.push_back(std::move(row));
    }

    // largest infeed: average unit output of every class stays below P_L
    for (std::size_t g = 0; g < n_class; ++g) {
      const GenUnit& unit = c.units[g];
      if (unit.count == 0) continue;
      if (unit.must_run) {
        conic::LinearRow row; // p <= count * P_L
        row.coefficients = prog.zero_row();
        row.coefficients[static_cast<Eigen::Index>(layout.p[t][g])] = 1.0;
        row.coefficients[static_cast<Eigen::Index>(layout.p_loss[t])] = -double(unit.count);
        row.name = tg + unit.class_label + "_largest_infeed";
        prog.rows.push_back(std::move(row));
        continue;
      }
      // p <= P_L * n via exact McCormick products on the count bits
      conic::LinearRow total; // p - sum_k 2^k w_k <= 0
      total.coefficients = prog.zero_row();
      total.coefficients[static_cast<Eigen::Index>(layout.p[t][g])] = 1.0;
      for (std::size_t k = 0; k < layout.bits[t][g].size(); ++k) {
        const std::size_t bit = layout.bits[t][g][k];
        const std::size_t w = prog.add_variable(
            tg + unit.class_label + "_w" + std::to_string(k), 0.0, c.spec.p_loss_max);
        const double weight = double(1 << k);

        conic::LinearRow ub_bit; // w <= p_loss_max * bit
        ub_bit.coefficients = prog.zero_row();
        ub_bit.coefficients[static_cast<Eigen::Index>(w)] = 1.0;
        ub_bit.coefficients[static_cast<Eigen::Index>(bit)] = -c.spec.p_loss_max;
        ub_bit.name = tg + unit.class_label + "_w" + std::to_string(k) + "_gate";
        prog.rows.push_back(std::move(ub_bit));

        conic::LinearRow ub_pl; // w <= P_L
        ub_pl.coefficients = prog.zero_row();
        ub_pl.coefficients[static_cast<Eigen::Index>(w)] = 1.0;
        ub_pl.coefficients[static_cast<Eigen::Index>(layout.p_loss[t])] = -1.0;
        ub_pl.name = tg + unit.class_label + "_w" + std::to_string(k) + "_cap";
        prog.rows.push_back(std::move(ub_pl));

        conic::LinearRow lb; // P_L - w <= p_loss_max * (1 - bit)
        lb.coefficients = prog.zero_row();
        lb.coefficients[static_cast<Eigen::Index>(layout.p_loss[t])] = 1.0;
        lb.coefficients[static_cast<Eigen::Index>(w)] = -1.0;
        lb.coefficients[static_cast<Eigen::Index>(bit)] = c.spec.p_loss_max;
        lb.rhs = c.spec.p_loss_max;
        lb.name = tg + unit.class_label + "_w" + std::to_string(k) + "_floor";
        prog.rows.push_back(std::move(lb));

        total.coefficients.conservativeResize(prog.num_variables());
        total.coefficients[static_cast<Eigen::Index>(w)] = -weight;
      }
      total.name = tg + unit.class_label + "_largest_infeed";
      prog.rows.push_back(std::move(total));
    }

    // catalog allocations
    for (std::size_t s = 0; s < n_svc; ++s) {
      layout.alloc[t][s] =
          prog.add_variable(tg + "R_" + c.fr_catalog[s].id, 0.0, c.fr_catalog[s].capacity_max);
      bool backed = false;
      conic::LinearRow row; // R_s - sum_{g backs s} r_g = 0
      row.coefficients = prog.zero_row();
      row.coefficients[static_cast<Eigen::Index>(layout.alloc[t][s])] = 1.0;
      for (std::size_t g = 0; g < n_class; ++g) {
        if (c.units[g].fr_service_id == c.fr_catalog[s].id &&
            layout.r[t][g] != npos_var()) {
          row.coefficients[static_cast<Eigen::Index>(layout.r[t][g])] = -1.0;
          backed = true;
        }
      }
      if (backed) {
        row.rhs = 0.0;
        row.kind = conic::LinearRow::Kind::Eq;
        row.name = tg + "supply_" + c.fr_catalog[s].id;
        prog.rows.push_back(std::move(row));
      }
      // unbacked services (storage products) stay bounded by capacity only
    }

    if (options.include_security) {
      conic::SecurityVars vars;
      vars.h = layout.h[t];
      vars.p_loss = layout.p_loss[t];
      vars.r = layout.alloc[t];
      conic::add_security_constraints(prog, c.fr_catalog, c.spec, c.chance, 0.0, vars, tg,
                                      kSecurityMargin);
    }
  }

  // inter-period commitment dynamics (cold start before the horizon)
  if (T > 1) {
    for (int t = 0; t < T; ++t) {
      const std::string tg = "t" + std::to_string(t) + "_";
      for (std::size_t g = 0; g < c.units.size(); ++g) {
        const GenUnit& unit = c.units[g];
        if (unit.must_run) continue;
        layout.start[t][g] =
            prog.add_variable(tg + unit.class_label + "_start", 0.0, unit.count);
        layout.stop[t][g] =
            prog.add_variable(tg + unit.class_label + "_stop", 0.0, unit.count);

        conic::LinearRow up; // n_t - n_{t-1} <= start_t
        up.coefficients = prog.zero_row();
        up.coefficients[static_cast<Eigen::Index>(layout.n[t][g])] = 1.0;
        if (t > 0) up.coefficients[static_cast<Eigen::Index>(layout.n[t - 1][g])] = -1.0;
        up.coefficients[static_cast<Eigen::Index>(layout.start[t][g])] = -1.0;
        up.name = tg + unit.class_label + "_startup";
        prog.rows.push_back(std::move(up));

        conic::LinearRow down; // n_{t-1} - n_t <= stop_t
        down.coefficients = prog.zero_row();
        if (t > 0) down.coefficients[static_cast<Eigen::Index>(layout.n[t - 1][g])] = 1.0;
        down.coefficients[static_cast<Eigen::Index>(layout.n[t][g])] = -1.0;
        down.coefficients[static_cast<Eigen::Index>(layout.stop[t][g])] = -1.0;
        down.name = tg + unit.class_label + "_shutdown";
        prog.rows.push_back(std::move(down));
      }
    }
    for (int t = 0; t < T; ++t) {
      for (std::size_t g = 0; g < c.units.size(); ++g) {
        const GenUnit& unit = c.units[g];
        if (unit.must_run) continue;
        if (unit.min_up > 0) {
          conic::LinearRow row; // units started in the window stay on
          row.coefficients = prog.zero_row();
          for (int tau = std::max(0, t - unit.min_up + 1); tau <= t; ++tau) {
            row.coefficients[static_cast<Eigen::Index>(layout.start[tau][g])] += 1.0;
          }
          row.coefficients[static_cast<Eigen::Index>(layout.n[t][g])] -= 1.0;
          row.name = "t" + std::to_string(t) + "_" + unit.class_label + "_min_up";
          prog.rows.push_back(std::move(row));
        }
        if (unit.min_down > 0) {
          conic::LinearRow row; // units stopped in the window stay off
          row.coefficients = prog.zero_row();
          for (int tau = std::max(0, t - unit.min_down + 1); tau <= t; ++tau) {
            row.coefficients[static_cast<Eigen::Index>(layout.stop[tau][g])] += 1.0;
          }
          row.coefficients[static_cast<Eigen::Index>(layout.n[t][g])] += 1.0;
          row.rhs = unit.count;
          row.name = "t" + std::to_string(t) + "_" + unit.class_label + "_min_down";
          prog.rows.push_back(std::move(row));
        }
      }
    }
  }

  // operating cost: no-load + energy + startups + FR headroom prices
  for (int t = 0; t < T; ++t) {
    for (std::size_t g = 0; g < c.units.size(); ++g) {
      prog.objective[static_cast<Eigen::Index>(layout.n[t][g])] += c.units[g].no_load_cost;
      prog.objective[static_cast<Eigen::Index>(layout.p[t][g])] += c.units[g].marginal_cost;
      if (layout.start[t][g] != npos_var()) {
        prog.objective[static_cast<Eigen::Index>(layout.start[t][g])] +=
            c.units[g].startup_cost;
      }
    }
    for (std::size_t s = 0; s < c.fr_catalog.size(); ++s) {
      prog.objective[static_cast<Eigen::Index>(layout.alloc[t][s])] +=
          c.fr_catalog[s].headroom_cost;
    }
  }
  return prog;
}

}  // namespace

Schedule solve_dispatch(const DispatchCase& c, const DispatchOptions& options) {
  validate_case(c);
  Layout layout;
  conic::ConicProgram prog = build_dispatch_program(c, options, layout);

  conic::MiOptions mi = options.mi;
  mi.gap = options.gap;
  conic::SolveResult result;
  if (options.use_enumeration) {
    result = conic::solve_by_enumeration(prog, mi.ipm);
  } else {
    result = conic::solve_mi(prog, mi);
  }

  Schedule schedule;
  schedule.status = result.status;
  if (result.status == conic::SolveResult::Status::Infeasible) {
    throw Error(Errc::Infeasible,
                "no commitment satisfies power balance and frequency security");
  }
  schedule.duality_gap = result.duality_gap;
  schedule.node_count = result.node_count;

  double cost = 0.0;
  for (int t = 0; t < c.periods; ++t) {
    PeriodSchedule period;
    double largest_unit_output = 0.0;
    for (std::size_t g = 0; g < c.units.size(); ++g) {
      const GenUnit& unit = c.units[g];
      const int n = static_cast<int>(
          std::llround(result.values[static_cast<Eigen::Index>(layout.n[t][g])]));
      double p = result.values[static_cast<Eigen::Index>(layout.p[t][g])];
      p = std::clamp(p, 0.0, n * unit.rated_power);
      period.commitment.push_back(n);
      period.dispatch_mw.push_back(p);
      if (n > 0) largest_unit_output = std::max(largest_unit_output, p / n);
      cost += unit.no_load_cost * n + unit.marginal_cost * p;
      if (layout.start[t][g] != npos_var()) {
        cost += unit.startup_cost *
                result.values[static_cast<Eigen::Index>(layout.start[t][g])];
      }
      period.h_gen += n * unit.inertia_constant * unit.rated_power;
    }
    period.wind_used = result.values[static_cast<Eigen::Index>(layout.wind[t])];
    period.curtailment = c.wind_available[t] - period.wind_used;
    for (std::size_t s = 0; s < c.fr_catalog.size(); ++s) {
      double r = result.values[static_cast<Eigen::Index>(layout.alloc[t][s])];
      r = std::clamp(r, 0.0, c.fr_catalog[s].capacity_max);
      period.allocations.push_back(r);
      cost += c.fr_catalog[s].headroom_cost * r;
    }
    // the largest loss the schedule exposes is exactly the largest infeed
    period.p_loss = largest_unit_output;

    if (options.include_security) {
      SystemSnapshot snap;
      snap.h_gen = period.h_gen;
      snap.h_demand = 0.0;
      snap.p_loss = period.p_loss;
      snap.portfolio.services = c.fr_catalog;
      snap.portfolio.allocations = period.allocations;
      snap.portfolio = validate_portfolio(std::move(snap.portfolio));
      period.security = security::assess(snap, c.spec, c.chance);
      if (!period.security.all_ok()) {
        throw Error(Errc::NumericalFailure,
                    "period " + std::to_string(t) +
                        ": solver point failed the independent security assessment");
      }
    }
    schedule.periods.push_back(std::move(period));
  }
  schedule.total_cost = cost;
  return schedule;
}

namespace {

int worker_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FREQSEC_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return static_cast<int>(hw);
}

DispatchCase case_for_axis_value(const DispatchCase& base, const std::string& axis,
                                 double value) {
  DispatchCase c = base;
  if (axis.rfind("activation_delay:", 0) == 0) {
    const std::string svc = axis.substr(17);
    bool found = false;
    for (FrService& s : c.fr_catalog) {
      if (s.id == svc) {
        s.activation_delay = value;
        found = true;
      }
    }
    if (!found) throw Error(Errc::BadInput, "axis names unknown service '" + svc + "'");
    return c;
  }
  if (axis.rfind("provider_fraction:", 0) == 0) {
    const std::string rest = axis.substr(18);
    const std::size_t colon = rest.find(':');
    if (colon == std::string::npos) {
      throw Error(Errc::BadInput, "provider_fraction axis needs <class>:<service>");
    }
    const std::string cls = rest.substr(0, colon);
    const std::string svc = rest.substr(colon + 1);
    if (!(value >= 0.0 && value <= 1.0)) {
      throw Error(Errc::BadInput, "provider fraction must lie in [0,1]");
    }
    bool svc_known = false;
    for (const FrService& s : c.fr_catalog) svc_known |= (s.id == svc);
    if (!svc_known) throw Error(Errc::BadInput, "axis names unknown service '" + svc + "'");
    for (std::size_t g = 0; g < c.units.size(); ++g) {
      if (c.units[g].class_label != cls) continue;
      GenUnit fast = c.units[g];
      const int moved = static_cast<int>(std::lround(value * c.units[g].count));
      fast.count = moved;
      fast.class_label = cls + "_fast";
      fast.fr_service_id = svc;
      c.units[g].count -= moved;
      if (fast.count > 0) c.units.push_back(std::move(fast));
      return c;
    }
    throw Error(Errc::BadInput, "axis names unknown class '" + cls + "'");
  }
  if (axis == "sigma") {
    if (!c.chance) throw Error(Errc::BadInput, "sigma sweep needs a chance spec in the case");
    c.chance->sigma = value;
    return c;
  }
  if (axis == "wind_scale") {
    for (double& w : c.wind_available) w *= value;
    return c;
  }
  throw Error(Errc::BadInput, "unknown sweep axis '" + axis + "'");
}

}  // namespace

SweepResult sweep(const DispatchCase& c, const std::string& axis,
                  const std::vector<double>& values, const DispatchOptions& options) {
  validate_case(c);
  SweepResult result;
  result.axis = axis;
  result.points.assign(values.size(), {});

  const int workers =
      std::min(worker_cap(), static_cast<int>(std::max<std::size_t>(values.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto run = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= values.size()) break;
      SweepPoint& point = result.points[i];
      point.value = values[i];
      try {
        const DispatchCase variant = case_for_axis_value(c, axis, values[i]);
        const Schedule sched = solve_dispatch(variant, options);
        point.feasible = true;
        point.cost = sched.total_cost;
        for (const PeriodSchedule& period : sched.periods) {
          point.curtailment += period.curtailment;
        }
        const PeriodSchedule& first = sched.periods.front();
        point.rocof_margin = c.spec.rocof_max - first.security.rocof_value;
        point.steady_state_margin = first.security.steady_state_margin;
        point.soc_slack = first.security.soc_slack;
      } catch (const Error&) {
        point.feasible = false;
        point.cost = std::numeric_limits<double>::quiet_NaN();
      }
    }
  };
  if (workers <= 1 || values.size() <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (std::thread& th : pool) th.join();
  }

  const bool increasing_axis = axis.rfind("activation_delay:", 0) == 0 || axis == "sigma";
  const bool decreasing_axis = axis.rfind("provider_fraction:", 0) == 0;
  result.monotone_expected = increasing_axis || decreasing_axis;
  if (result.monotone_expected) {
    const double tol = 2.0 * std::max(options.gap, 1e-9);
    bool ok = true;
    for (std::size_t i = 1; i < result.points.size(); ++i) {
      if (!result.points[i - 1].feasible || !result.points[i].feasible) continue;
      const double prev = result.points[i - 1].cost;
      const double cur = result.points[i].cost;
      if (increasing_axis && cur < prev - tol * std::abs(prev)) ok = false;
      if (decreasing_axis && cur > prev + tol * std::abs(prev)) ok = false;
    }
    result.monotone_observed = ok;
  }
  return result;
}

}  // namespace freqsec::dispatch
