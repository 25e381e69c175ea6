#pragma once

#include "json.hpp"
#include "thermoprobe/thermolab.hpp"

namespace thermoprobe::detail {

nlohmann::ordered_json spec_to_json_value(const ScenarioSpec& spec);

}  // namespace thermoprobe::detail
