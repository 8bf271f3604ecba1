#include "ifs/csvio.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ifs/errors.hpp"

namespace ifs {

using nlohmann::json;

std::string cloud_sidecar_path(const std::string& csv_path) {
  return csv_path + ".meta.json";
}

void save_point_cloud(const std::string& csv_path, const PointCloud& cloud) {
  std::FILE* f = std::fopen(csv_path.c_str(), "wb");
  if (!f) throw IoError("cannot open for writing: " + csv_path);
  std::size_t d = cloud.dim();
  for (std::size_t a = 0; a < d; ++a)
    std::fprintf(f, "%sx%zu", a ? "," : "", a + 1);
  std::fputc('\n', f);
  char buf[32];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double* r = cloud.row(i);
    for (std::size_t a = 0; a < d; ++a) {
      std::snprintf(buf, sizeof(buf), "%.17g", r[a]);
      if (a) std::fputc(',', f);
      std::fputs(buf, f);
    }
    std::fputc('\n', f);
  }
  bool bad = std::ferror(f);
  std::fclose(f);
  if (bad) throw IoError("write failed: " + csv_path);

  json meta;
  meta["system"] = cloud.provenance.system_name;
  meta["seed"] = cloud.provenance.seed;
  meta["burn_in"] = cloud.provenance.burn_in;
  meta["count"] = cloud.provenance.count;
  meta["note"] = cloud.provenance.note;
  std::ofstream side(cloud_sidecar_path(csv_path), std::ios::binary);
  if (!side) throw IoError("cannot write sidecar for: " + csv_path);
  side << meta.dump(2) << "\n";
}

PointCloud load_point_cloud(const std::string& csv_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + csv_path);
  std::string header;
  if (!std::getline(in, header)) throw IoError("empty file: " + csv_path);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  std::size_t d = header.empty() ? 0 : 1;
  for (char c : header) d += (c == ',');
  if (d < 1 || d > kMaxDim || header.rfind("x1", 0) != 0)
    throw IoError("bad header in: " + csv_path);

  PointCloud cloud(d);
  std::string line;
  std::size_t lineno = 1;
  Vec p(d);
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const char* s = line.c_str();
    char* end = nullptr;
    for (std::size_t a = 0; a < d; ++a) {
      p[a] = std::strtod(s, &end);
      if (end == s)
        throw IoError("bad number at line " + std::to_string(lineno) + " of " +
                      csv_path);
      s = end;
      if (a + 1 < d) {
        if (*s != ',')
          throw IoError("expected ',' at line " + std::to_string(lineno) +
                        " of " + csv_path);
        ++s;
      }
    }
    cloud.append(p);
  }

  std::ifstream side(cloud_sidecar_path(csv_path), std::ios::binary);
  if (side) {
    try {
      json meta = json::parse(side);
      cloud.provenance.system_name = meta.value("system", std::string());
      cloud.provenance.seed = meta.value("seed", std::uint64_t{0});
      cloud.provenance.burn_in = meta.value("burn_in", std::uint64_t{0});
      cloud.provenance.count = meta.value("count", std::uint64_t{0});
      cloud.provenance.note = meta.value("note", std::string());
    } catch (const json::exception&) {
      // A corrupt sidecar only loses provenance, never the data.
    }
  }
  return cloud;
}

}  // namespace ifs
