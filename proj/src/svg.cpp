#include "ifs/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>

#include "ifs/errors.hpp"

namespace ifs {

namespace {

void appendf(std::string& out, const char* fmt, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, fmt);
  int n = std::vsnprintf(buf, sizeof(buf), fmt, ap);
  va_end(ap);
  if (n > 0) out.append(buf, std::min<std::size_t>(n, sizeof(buf) - 1));
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_scatter_svg(const PointCloud& cloud, const SvgParams& params) {
  if (cloud.size() == 0) throw InvalidArgument("render: empty cloud");
  if (params.width < 64 || params.height < 64)
    throw InvalidArgument("render: canvas too small");

  auto [lo, hi] = cloud.bbox();
  double x0 = lo[0], x1 = hi[0];
  double y0 = cloud.dim() >= 2 ? lo[1] : 0.0;
  double y1 = cloud.dim() >= 2 ? hi[1] : 1.0;
  if (x1 <= x0) x1 = x0 + 1.0;
  if (y1 <= y0) y1 = y0 + 1.0;

  const double margin = 40.0;
  double w = params.width, h = params.height;
  double sx = (w - 2 * margin) / (x1 - x0);
  double sy = (h - 2 * margin) / (y1 - y0);

  std::size_t stride = (cloud.size() + params.max_points - 1) / params.max_points;
  if (stride == 0) stride = 1;
  std::size_t shown = (cloud.size() + stride - 1) / stride;
  double radius =
      std::clamp(600.0 / std::sqrt(static_cast<double>(shown) + 1.0), 0.3, 2.5);

  std::string out;
  out.reserve(shown * 40 + 1024);
  appendf(out,
          "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%u\" "
          "height=\"%u\" viewBox=\"0 0 %u %u\">\n",
          params.width, params.height, params.width, params.height);
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  appendf(out,
          "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
          "fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n",
          margin, margin, w - 2 * margin, h - 2 * margin);
  if (!params.title.empty())
    appendf(out,
            "<text x=\"%.1f\" y=\"24\" font-family=\"sans-serif\" "
            "font-size=\"14\" fill=\"#333333\">%s</text>\n",
            margin, escape_xml(params.title).c_str());

  appendf(out, "<g fill=\"#1f4e79\" fill-opacity=\"0.5\">\n");
  for (std::size_t i = 0; i < cloud.size(); i += stride) {
    const double* p = cloud.row(i);
    double px = margin + (p[0] - x0) * sx;
    double py = h - margin - ((cloud.dim() >= 2 ? p[1] : 0.5) - y0) * sy;
    appendf(out, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\"/>\n", px, py, radius);
  }
  out += "</g>\n";

  appendf(out,
          "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
          "font-size=\"11\" fill=\"#555555\">%.6g, %.6g</text>\n",
          margin, h - margin + 16.0, x0, y0);
  appendf(out,
          "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
          "font-size=\"11\" fill=\"#555555\" text-anchor=\"end\">%.6g, %.6g</text>\n",
          w - margin, margin - 8.0, x1, y1);
  appendf(out, "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
          "font-size=\"11\" fill=\"#555555\" text-anchor=\"end\">n=%zu of %zu</text>\n",
          w - margin, h - margin + 16.0, shown, cloud.size());
  out += "</svg>\n";
  return out;
}

}  // namespace ifs
