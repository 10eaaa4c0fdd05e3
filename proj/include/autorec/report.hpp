#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "autorec/orchestrate.hpp"

namespace autorec {

nlohmann::json to_json(const ParamValue& v);
nlohmann::json to_json(const ParamAssignment& a);
ParamAssignment assignment_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Trial& t);
nlohmann::json to_json(const AlgorithmOutcome& o);
nlohmann::json to_json(const SelectionReport& r);
nlohmann::json to_json(const SelectionConfig& c);

// Space/grid override files share the report's JSON dialect.
ParamSpace space_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ParamSpace& s);
Grid grid_from_json(const nlohmann::json& j);

struct DatasetDigest {
  std::string path;
  int n_users = 0;
  int n_items = 0;
  std::size_t n_ratings = 0;
  RatingScale scale;
};

// The full run manifest written by `auto`: everything needed to re-run the
// configuration plus the report payload.
nlohmann::json make_manifest(const std::string& command_line,
                             const SelectionConfig& config,
                             const DatasetDigest& dataset,
                             const SelectionReport& report);

std::string dump_report(const nlohmann::json& j);

}  // namespace autorec
