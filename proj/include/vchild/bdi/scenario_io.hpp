#pragma once

#include <filesystem>
#include <memory>
#include <vector>

#include <nlohmann/json.hpp>

#include "vchild/bdi/types.hpp"

namespace vchild::bdi {

/// Parses one scenario document. Conditions are written as
/// "<belief> >= <threshold>" or "<belief> < <threshold>". The result is
/// validated; any schema or cross-reference problem throws InvalidScenario.
Scenario parse_scenario(const nlohmann::json& doc);

Scenario load_scenario(const std::filesystem::path& path);

/// Loads every *.json file in `dir`, ordered by scenario id.
std::vector<std::shared_ptr<const Scenario>> load_catalogue(const std::filesystem::path& dir);

Condition parse_condition(std::string_view text);

}  // namespace vchild::bdi
