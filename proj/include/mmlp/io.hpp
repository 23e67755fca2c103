#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>

#include "mmlp/assignment.hpp"
#include "mmlp/instance.hpp"

namespace mmlp {

/// JSON documents preserve insertion order so output is stable and readable.
using Json = nlohmann::ordered_json;

/// Instance interchange format:
///   {"agents": [0, 1, ...],
///    "resources":     [{"id": 0, "coeffs": {"0": 1.0, ...}}, ...],
///    "beneficiaries": [{"id": 0, "coeffs": {...}}, ...]}
/// Unknown top-level keys (e.g. "run_config") are ignored on read.
Json instance_to_json(const Instance& instance);
Instance instance_from_json(const Json& doc);

/// Assignment format: {"values": {"<agent>": x, ...}}.
Json assignment_to_json(const Assignment& assignment);
Assignment assignment_from_json(const Json& doc);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_json_file(const std::filesystem::path& path, const Json& doc);

}  // namespace mmlp
