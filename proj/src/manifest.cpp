#include "ifs/manifest.hpp"

#include <fstream>

#include "ifs/errors.hpp"

namespace ifs {

using nlohmann::json;

std::string manifest_path_for(const std::string& output_path) {
  return output_path + ".manifest.json";
}

void save_manifest(const std::string& path, const RunManifest& m) {
  json j;
  j["command"] = m.command;
  j["params"] = m.params;
  j["outputs"] = m.outputs;
  j["tool_version"] = m.tool_version;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write manifest: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("manifest write failed: " + path);
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("bad manifest " + path + ": " + e.what());
  }
  RunManifest m;
  if (!j.contains("command") || !j.contains("params"))
    throw IoError("manifest missing required keys: " + path);
  m.command = j["command"].get<std::string>();
  m.params = j["params"];
  if (j.contains("outputs")) m.outputs = j["outputs"].get<std::vector<std::string>>();
  if (j.contains("tool_version")) m.tool_version = j["tool_version"].get<std::string>();
  return m;
}

}  // namespace ifs
