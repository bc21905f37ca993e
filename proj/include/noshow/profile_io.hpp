#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "noshow/profile.hpp"

namespace noshow {

// Text format:
//   m k
//   <weight>: c1 c2 ... cj
// '#' starts a comment; a comment of the form "# labels: l0 l1 ..." names the
// candidates. JSON mirror: {"m":..,"k":..,"groups":[{"weight":..,"ballot":[..]}]}
// with an optional "labels" array.

ElectionInstance parse_instance_text(std::string_view text);
ElectionInstance parse_instance_json(const nlohmann::json& doc);
/// Dispatches on the first non-blank character ('{' means JSON).
ElectionInstance parse_instance(std::string_view text);
ElectionInstance read_instance_file(const std::string& path);

std::string format_instance_text(const ElectionInstance& instance);
nlohmann::json instance_to_json(const ElectionInstance& instance);

nlohmann::json committee_to_json(const Committee& w);
nlohmann::json outcome_to_json(const Outcome& outcome);
Outcome outcome_from_json(const nlohmann::json& doc);
std::string format_committee(const Committee& w, const Profile* names = nullptr);

}  // namespace noshow
