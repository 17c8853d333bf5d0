#pragma once

#include "bshm/model.hpp"

#include <json.hpp>

#include <filesystem>

namespace bshm {

/// Accepts "p/q" / decimal strings and integer JSON numbers.
Rational rational_from_json(const nlohmann::json& value);
/// Canonical reduced fraction as a JSON string.
nlohmann::json rational_to_json(const Rational& value);

/// { "types": [{"capacity", "rate"}...], "jobs": [{"id","size","start","end"}...] }
Instance parse_instance(const nlohmann::json& doc, const LoadOptions& options = {});
Instance load_instance(const std::filesystem::path& path, const LoadOptions& options = {});

nlohmann::json instance_to_json(const Instance& instance);
void save_instance(const Instance& instance, const std::filesystem::path& path);

}  // namespace bshm
