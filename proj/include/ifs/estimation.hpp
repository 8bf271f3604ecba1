#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ifs/cloud.hpp"
#include "ifs/vec.hpp"

namespace ifs {

// Uniform-grid neighbor index over a fixed cloud. Counts are exact: queries
// scan a candidate cell range padded by one cell and apply the same closed
// ball predicate (squared distance <= r^2) an exhaustive scan would.
class BallIndex {
 public:
  // cell_hint sizes the grid cells; it is enlarged as needed to keep the
  // total cell count bounded. Pass 0 to size cells from the bbox diagonal.
  BallIndex(const PointCloud& cloud, double cell_hint = 0.0);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }
  std::size_t count_within(const Vec& x, double r) const;

 private:
  std::size_t dim_ = 0, n_ = 0;
  std::vector<double> pts_;
  Vec lo_;
  double cell_ = 1.0;
  std::size_t dims_[kMaxDim] = {0};
  std::vector<std::uint32_t> starts_;  // CSR offsets per cell
  std::vector<std::uint32_t> order_;   // point ids grouped by cell
  bool brute_ = false;

  std::size_t cell_of(const double* p, std::size_t axis) const;
};

struct SlopeEstimate {
  double slope = 0.0;
  double stderr_ = 0.0;
  std::uint32_t radii_used = 0;
  double r_largest = 0.0, r_smallest = 0.0;
};

// Least-squares slope of log count(x, r) / N against log r over the given
// descending radii, truncated at the first radius whose count drops below
// min_count. Fewer than three usable radii is an InsufficientData error.
SlopeEstimate local_dimension(const BallIndex& index, const Vec& x,
                              const std::vector<double>& radii,
                              std::size_t min_count = 50);

struct ProfileParams {
  std::size_t n_centers = 200;
  std::uint64_t seed = 7;
  std::size_t min_count = 50;
  double r0 = 0.0;          // 0 = bbox diagonal / 8
  int max_levels = 60;      // dyadic ladder length
  bool edge_exclusion = false;  // drop centers whose r0-ball leaves the bbox
  unsigned workers = 0;
};

struct DimensionProfile {
  std::vector<std::uint32_t> center_ids;   // indices into the cloud
  std::vector<SlopeEstimate> slopes;       // one per kept center
  double q10 = 0.0, q50 = 0.0, q90 = 0.0;
  double coverage = -1.0;  // fraction of slopes inside the band, -1 if no band
  double band_lo = 0.0, band_hi = 0.0;
  std::size_t excluded_edge = 0;
  std::size_t excluded_insufficient = 0;
  double r0 = 0.0;
};

// Samples centers from the cloud without replacement, estimates a local
// slope at each, and summarizes the distribution. If `band` is given
// (slackened dimension bounds), reports the fraction of slopes inside it.
DimensionProfile dimension_profile(
    const PointCloud& cloud, const ProfileParams& params,
    std::optional<std::pair<double, double>> band = std::nullopt);

// The dyadic radii ladder used by dimension_profile.
std::vector<double> radii_ladder(double r0, int max_levels);

}  // namespace ifs
