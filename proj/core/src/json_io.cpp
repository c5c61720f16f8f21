#include "freqsec/json_io.hpp"

#include <fstream>

namespace freqsec::io {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::BadInput, what); }

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    bad(std::string("missing or non-numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) bad(std::string("non-numeric field '") + key + "'");
  return j.at(key).get<double>();
}

std::string text(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    bad(std::string("missing or non-string field '") + key + "'");
  }
  return j.at(key).get<std::string>();
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    bad("malformed JSON in '" + path + "': " + e.what());
  }
  return j;
}

SecuritySpec spec_from_json(const json& j) {
  SecuritySpec spec;
  spec.f_nominal = number(j, "f0");
  spec.delta_f_max = number(j, "delta_f_max");
  spec.rocof_max = number(j, "rocof_max");
  spec.p_loss_max = number(j, "p_loss_max");
  validate_spec(spec);
  return spec;
}

json spec_to_json(const SecuritySpec& spec) {
  return json{{"f0", spec.f_nominal},
              {"delta_f_max", spec.delta_f_max},
              {"rocof_max", spec.rocof_max},
              {"p_loss_max", spec.p_loss_max}};
}

ChanceSpec chance_from_json(const json& j) {
  ChanceSpec chance;
  chance.h_mu = number(j, "h_mu");
  chance.sigma = number(j, "sigma");
  chance.alpha = number(j, "alpha");
  chance.eta = number(j, "eta");
  validate_chance(chance);
  return chance;
}

json chance_to_json(const ChanceSpec& chance) {
  return json{{"h_mu", chance.h_mu},
              {"sigma", chance.sigma},
              {"alpha", chance.alpha},
              {"eta", chance.eta}};
}

std::vector<FrService> services_from_json(const json& j) {
  if (!j.is_array() || j.empty()) bad("'services' must be a non-empty array");
  std::vector<FrService> services;
  for (const json& e : j) {
    FrService svc;
    svc.id = text(e, "id");
    svc.capacity_max = number(e, "capacity_max");
    svc.ramp_duration = number(e, "ramp_duration");
    svc.activation_delay = number(e, "activation_delay");
    svc.headroom_cost = number_or(e, "headroom_cost", 0.0);
    services.push_back(std::move(svc));
  }
  return services;
}

json services_to_json(const std::vector<FrService>& services,
                      const std::vector<double>* allocations) {
  json out = json::array();
  for (std::size_t s = 0; s < services.size(); ++s) {
    json e{{"id", services[s].id},
           {"capacity_max", services[s].capacity_max},
           {"ramp_duration", services[s].ramp_duration},
           {"activation_delay", services[s].activation_delay},
           {"headroom_cost", services[s].headroom_cost}};
    if (allocations) e["allocation"] = (*allocations)[s];
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

SystemInput system_from_json(const json& j) {
  SystemInput input;
  if (!j.contains("spec") || !j.contains("snapshot") || !j.contains("services")) {
    bad("system document needs 'spec', 'snapshot' and 'services'");
  }
  input.spec = spec_from_json(j.at("spec"));

  const json& snap = j.at("snapshot");
  input.snapshot.h_gen = number(snap, "h_gen");
  input.snapshot.h_demand = number_or(snap, "h_demand", 0.0);
  input.snapshot.p_loss = number(snap, "p_loss");

  Portfolio portfolio;
  portfolio.services = services_from_json(j.at("services"));
  for (const json& e : j.at("services")) {
    portfolio.allocations.push_back(number_or(e, "allocation", 0.0));
  }
  input.snapshot.portfolio = validate_portfolio(std::move(portfolio));
  validate_snapshot(input.snapshot);

  if (j.contains("chance")) input.chance = chance_from_json(j.at("chance"));
  return input;
}

json system_to_json(const SystemInput& input) {
  json j;
  j["spec"] = spec_to_json(input.spec);
  j["snapshot"] = json{{"h_gen", input.snapshot.h_gen},
                       {"h_demand", input.snapshot.h_demand},
                       {"p_loss", input.snapshot.p_loss}};
  j["services"] =
      services_to_json(input.snapshot.portfolio.services, &input.snapshot.portfolio.allocations);
  if (input.chance) j["chance"] = chance_to_json(*input.chance);
  return j;
}

SystemInput load_system_file(const std::string& path) {
  return system_from_json(load_json_file(path));
}

json report_to_json(const SecurityReport& report) {
  return json{{"rocof_value", report.rocof_value},
              {"rocof_ok", report.rocof_ok},
              {"steady_state_margin", report.steady_state_margin},
              {"steady_state_ok", report.steady_state_ok},
              {"nadir_time", report.nadir_time},
              {"nadir_depth", report.nadir_depth},
              {"nadir_interval", report.nadir_interval},
              {"nadir_ok", report.nadir_ok},
              {"soc_slack", report.soc_slack},
              {"secure", report.all_ok()}};
}

std::vector<sim::ProviderDynamics> providers_from_json(const json& j,
                                                       const SystemInput& system) {
  if (!j.is_array() || j.empty()) bad("providers document must be a non-empty array");
  const Portfolio& pf = system.snapshot.portfolio;
  std::vector<sim::ProviderDynamics> providers;
  for (const json& e : j) {
    const std::string kind = text(e, "kind");
    const std::string svc_id = text(e, "service");
    std::ptrdiff_t idx = -1;
    for (std::size_t s = 0; s < pf.services.size(); ++s) {
      if (pf.services[s].id == svc_id) idx = static_cast<std::ptrdiff_t>(s);
    }
    if (idx < 0) bad("provider references unknown service '" + svc_id + "'");
    const FrService& svc = pf.services[static_cast<std::size_t>(idx)];
    const double allocation = pf.allocations[static_cast<std::size_t>(idx)];

    if (kind == "delayed_ramp") {
      providers.push_back(sim::ProviderDynamics::delayed_ramp(svc, allocation));
    } else if (kind == "droop_lag") {
      providers.push_back(sim::ProviderDynamics::droop_lag(
          svc.id, number(e, "droop_gain"), number(e, "lag_time_constant"),
          number_or(e, "saturation", allocation), number_or(e, "deadband", 0.0)));
    } else {
      bad("provider kind must be 'delayed_ramp' or 'droop_lag'");
    }
  }
  return providers;
}

std::vector<sim::ProviderDynamics> load_providers_file(const std::string& path,
                                                       const SystemInput& system) {
  return providers_from_json(load_json_file(path), system);
}

dispatch::DispatchCase case_from_json(const json& j) {
  dispatch::DispatchCase c;
  if (!j.contains("units") || !j.contains("demand") || !j.contains("spec") ||
      !j.contains("services")) {
    bad("case document needs 'units', 'demand', 'spec' and 'services'");
  }
  c.spec = spec_from_json(j.at("spec"));
  c.fr_catalog = services_from_json(j.at("services"));
  if (j.contains("chance")) c.chance = chance_from_json(j.at("chance"));

  for (const json& e : j.at("units")) {
    dispatch::GenUnit unit;
    unit.class_label = text(e, "class");
    unit.count = static_cast<int>(number(e, "count"));
    unit.rated_power = number(e, "rated_power");
    unit.min_stable = number(e, "min_stable");
    unit.no_load_cost = number_or(e, "no_load_cost", 0.0);
    unit.marginal_cost = number(e, "marginal_cost");
    unit.startup_cost = number_or(e, "startup_cost", 0.0);
    unit.inertia_constant = number(e, "inertia_constant");
    unit.max_fr_deliverable = number_or(e, "max_fr_deliverable", 0.0);
    if (e.contains("fr_service")) unit.fr_service_id = text(e, "fr_service");
    unit.must_run = e.value("must_run", false);
    unit.part_load_range = number_or(e, "part_load_range", 0.0);
    unit.min_up = static_cast<int>(number_or(e, "min_up", 0.0));
    unit.min_down = static_cast<int>(number_or(e, "min_down", 0.0));
    c.units.push_back(std::move(unit));
  }

  if (!j.at("demand").is_array()) bad("'demand' must be an array of MW values");
  for (const json& d : j.at("demand")) c.demand.push_back(d.get<double>());
  if (j.contains("wind")) {
    for (const json& w : j.at("wind")) c.wind_available.push_back(w.get<double>());
  } else {
    c.wind_available.assign(c.demand.size(), 0.0);
  }
  c.periods = static_cast<int>(
      number_or(j, "periods", static_cast<double>(c.demand.size())));
  dispatch::validate_case(c);
  return c;
}

json case_to_json(const dispatch::DispatchCase& c) {
  json units = json::array();
  for (const dispatch::GenUnit& u : c.units) {
    json e{{"class", u.class_label},
           {"count", u.count},
           {"rated_power", u.rated_power},
           {"min_stable", u.min_stable},
           {"no_load_cost", u.no_load_cost},
           {"marginal_cost", u.marginal_cost},
           {"startup_cost", u.startup_cost},
           {"inertia_constant", u.inertia_constant},
           {"max_fr_deliverable", u.max_fr_deliverable},
           {"must_run", u.must_run},
           {"part_load_range", u.part_load_range},
           {"min_up", u.min_up},
           {"min_down", u.min_down}};
    if (!u.fr_service_id.empty()) e["fr_service"] = u.fr_service_id;
    units.push_back(std::move(e));
  }
  json j{{"units", std::move(units)},
         {"demand", c.demand},
         {"wind", c.wind_available},
         {"spec", spec_to_json(c.spec)},
         {"services", services_to_json(c.fr_catalog, nullptr)},
         {"periods", c.periods}};
  if (c.chance) j["chance"] = chance_to_json(*c.chance);
  return j;
}

dispatch::DispatchCase load_case_file(const std::string& path) {
  return case_from_json(load_json_file(path));
}

json schedule_to_json(const dispatch::Schedule& schedule, const dispatch::DispatchCase& c) {
  json periods = json::array();
  for (const dispatch::PeriodSchedule& p : schedule.periods) {
    json commitment, dispatch_mw;
    for (std::size_t g = 0; g < c.units.size(); ++g) {
      commitment[c.units[g].class_label] = p.commitment[g];
      dispatch_mw[c.units[g].class_label] = p.dispatch_mw[g];
    }
    json allocations;
    for (std::size_t s = 0; s < c.fr_catalog.size(); ++s) {
      allocations[c.fr_catalog[s].id] = p.allocations[s];
    }
    periods.push_back(json{{"commitment", std::move(commitment)},
                           {"dispatch", std::move(dispatch_mw)},
                           {"wind_used", p.wind_used},
                           {"curtailment", p.curtailment},
                           {"allocations", std::move(allocations)},
                           {"h_gen", p.h_gen},
                           {"p_loss", p.p_loss},
                           {"security", report_to_json(p.security)}});
  }
  const char* status = "optimal";
  if (schedule.status == conic::SolveResult::Status::GapReached) status = "gap_reached";
  if (schedule.status == conic::SolveResult::Status::Infeasible) status = "infeasible";
  return json{{"status", status},
              {"total_cost", schedule.total_cost},
              {"duality_gap", schedule.duality_gap},
              {"node_count", schedule.node_count},
              {"periods", std::move(periods)}};
}

}  // namespace freqsec::io
