#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "freqsec/dispatch.hpp"
#include "freqsec/simulate.hpp"
#include "freqsec/types.hpp"

namespace freqsec::io {

/// Contents of a system.json document: the requirement envelope, the
/// operating point and optionally the demand-inertia uncertainty model.
struct SystemInput {
  SecuritySpec spec;
  SystemSnapshot snapshot;
  std::optional<ChanceSpec> chance;
};

SystemInput system_from_json(const nlohmann::json& j);
nlohmann::json system_to_json(const SystemInput& input);
SystemInput load_system_file(const std::string& path);

nlohmann::json report_to_json(const SecurityReport& report);

/// providers.json: a list of dynamic models referencing services of the
/// system document by id.
std::vector<sim::ProviderDynamics> providers_from_json(const nlohmann::json& j,
                                                       const SystemInput& system);
std::vector<sim::ProviderDynamics> load_providers_file(const std::string& path,
                                                       const SystemInput& system);

dispatch::DispatchCase case_from_json(const nlohmann::json& j);
nlohmann::json case_to_json(const dispatch::DispatchCase& c);
dispatch::DispatchCase load_case_file(const std::string& path);

nlohmann::json schedule_to_json(const dispatch::Schedule& schedule,
                                const dispatch::DispatchCase& c);

}  // namespace freqsec::io
