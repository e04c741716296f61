#pragma once

// Internal bridge between the scenario structs and their JSON form; not
// installed. Public headers stay free of the JSON dependency.

#include "json.hpp"

#include "trustnet/scenario.hpp"

namespace trustnet::detail {

nlohmann::ordered_json scenario_to_json(const Scenario& scenario);

}  // namespace trustnet::detail
