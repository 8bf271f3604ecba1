#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace ifs {

inline constexpr const char* kToolVersion = "0.1.0";

// Record of one CLI run, written next to each produced file so any output
// can be reproduced later with `ifstool replay <manifest>`.
struct RunManifest {
  std::string command;
  nlohmann::json params;          // the full parameter object of the run
  std::vector<std::string> outputs;
  std::string tool_version = kToolVersion;
};

std::string manifest_path_for(const std::string& output_path);
void save_manifest(const std::string& path, const RunManifest& m);
RunManifest load_manifest(const std::string& path);

}  // namespace ifs
