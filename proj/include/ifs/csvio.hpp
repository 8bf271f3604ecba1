#pragma once

#include <string>

#include "ifs/cloud.hpp"

namespace ifs {

// Text formats are fixed so identical clouds serialize to identical bytes:
// header "x1,...,xd", one row per point, %.17g per coordinate (round-trip
// exact for doubles). Provenance travels in a JSON sidecar next to the file.
std::string cloud_sidecar_path(const std::string& csv_path);

void save_point_cloud(const std::string& csv_path, const PointCloud& cloud);

// Loads a cloud; the sidecar is read when present, missing sidecars leave
// the provenance empty.
PointCloud load_point_cloud(const std::string& csv_path);

}  // namespace ifs
