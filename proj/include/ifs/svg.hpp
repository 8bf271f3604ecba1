#pragma once

#include <cstdint>
#include <string>

#include "ifs/cloud.hpp"

namespace ifs {

struct SvgParams {
  std::uint32_t width = 800;
  std::uint32_t height = 800;
  std::size_t max_points = 100000;  // uniform stride downsampling beyond this
  std::string title;
};

// Scatter plot of the first two coordinates (1-d clouds are drawn on a
// horizontal strip). Output is a self-contained SVG string; rendering the
// same cloud with the same params yields identical bytes.
std::string render_scatter_svg(const PointCloud& cloud, const SvgParams& params);

}  // namespace ifs
