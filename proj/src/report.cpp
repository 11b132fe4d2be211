#include "spincert/app/report.hpp"

#include <sstream>

#include "spincert/rng.hpp"

namespace spincert::app {

using nlohmann::ordered_json;

ordered_json tool_info() {
  ordered_json j;
  j["name"] = kToolName;
  j["version"] = kToolVersion;
  j["generator"] = kGeneratorId;
  return j;
}

ordered_json moments_to_json(const MomentSet& m) {
  ordered_json j;
  j["jx2"] = m.jx2;
  j["jy2"] = m.jy2;
  j["jz_mean"] = m.jz_mean;
  j["jz2"] = m.jz2;
  j["jz4"] = m.jz4;
  j["jz_variance"] = m.jz_variance();
  j["jz2_variance"] = m.jz2_variance();
  return j;
}

ordered_json criteria_to_json(const CriteriaResult& result) {
  ordered_json j;
  j["xi"] = result.xi;
  j["chi"] = result.chi;
  if (result.alpha) {
    j["alpha"] = *result.alpha;
  } else {
    j["alpha"] = "degenerate";
  }
  j["criterion1_depth"] = result.depth_criterion1;
  j["criterion2_depth"] = result.depth_criterion2;
  j["certified_depth"] = result.certified_depth;
  ordered_json bounds = ordered_json::array();
  for (std::size_t i = 0; i < result.bound_table.size(); ++i) {
    ordered_json row;
    row["m"] = static_cast<int>(i) + 2;
    row["f"] = result.bound_table[i];
    bounds.push_back(std::move(row));
  }
  j["bounds"] = std::move(bounds);
  return j;
}

namespace {

void flatten(const ordered_json& node, const std::string& prefix, std::ostringstream& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) {
      flatten(node[i], prefix + "." + std::to_string(i), out);
    }
  } else {
    out << prefix << "," << node.dump() << "\n";
  }
}

}  // namespace

std::string render_report(const ordered_json& report, OutputFormat format) {
  if (format == OutputFormat::json) {
    return report.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "key,value\n";
  flatten(report, "", out);
  return out.str();
}

}  // namespace spincert::app
