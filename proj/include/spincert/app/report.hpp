#pragma once

#include <string>

#include <json.hpp>

#include "spincert/app/config.hpp"
#include "spincert/criteria.hpp"
#include "spincert/measurement.hpp"

namespace spincert::app {

inline constexpr const char* kToolName = "spincert";
inline constexpr const char* kToolVersion = "0.1.0";

nlohmann::ordered_json tool_info();
nlohmann::ordered_json moments_to_json(const MomentSet& moments);
nlohmann::ordered_json criteria_to_json(const CriteriaResult& result);

// json: pretty-printed document. csv: one `path,value` line per leaf, in
// document order, so certificates stay diffable in either format.
std::string render_report(const nlohmann::ordered_json& report, OutputFormat format);

}  // namespace spincert::app
