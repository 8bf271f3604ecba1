#include "ifs/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ifs/errors.hpp"
#include "ifs/parallel.hpp"
#include "ifs/rng.hpp"

namespace ifs {

namespace {
constexpr std::size_t kMaxCells = 1u << 22;
}

BallIndex::BallIndex(const PointCloud& cloud, double cell_hint) {
  if (cloud.size() == 0) throw InvalidArgument("BallIndex: empty cloud");
  dim_ = cloud.dim();
  n_ = cloud.size();
  pts_.assign(cloud.row(0), cloud.row(0) + n_ * dim_);

  auto [lo, hi] = cloud.bbox();
  lo_ = lo;
  double diag2 = 0.0;
  for (std::size_t a = 0; a < dim_; ++a) {
    double w = hi[a] - lo[a];
    diag2 += w * w;
  }
  double diag = std::sqrt(diag2);
  if (diag == 0.0) {
    brute_ = true;  // all points coincide
    return;
  }
  cell_ = cell_hint > 0.0 ? cell_hint : diag / 64.0;

  // Grow the cell until the grid fits the cap.
  for (;;) {
    std::size_t total = 1;
    bool overflow = false;
    for (std::size_t a = 0; a < dim_; ++a) {
      double w = hi[a] - lo_[a];
      std::size_t k = static_cast<std::size_t>(w / cell_) + 1;
      dims_[a] = k;
      if (total > kMaxCells / k) {
        overflow = true;
        break;
      }
      total *= k;
    }
    if (!overflow) break;
    cell_ *= 2.0;
  }

  std::size_t total = 1;
  for (std::size_t a = 0; a < dim_; ++a) total *= dims_[a];
  starts_.assign(total + 1, 0);
  std::vector<std::uint32_t> cell_id(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const double* p = pts_.data() + i * dim_;
    std::size_t id = 0;
    for (std::size_t a = 0; a < dim_; ++a) id = id * dims_[a] + cell_of(p, a);
    cell_id[i] = static_cast<std::uint32_t>(id);
    ++starts_[id + 1];
  }
  for (std::size_t c = 0; c < total; ++c) starts_[c + 1] += starts_[c];
  order_.resize(n_);
  std::vector<std::uint32_t> cursor(starts_.begin(), starts_.end() - 1);
  for (std::size_t i = 0; i < n_; ++i) order_[cursor[cell_id[i]]++] = i;
}

std::size_t BallIndex::cell_of(const double* p, std::size_t axis) const {
  double t = (p[axis] - lo_[axis]) / cell_;
  if (t < 0.0) t = 0.0;
  std::size_t c = static_cast<std::size_t>(t);
  return c >= dims_[axis] ? dims_[axis] - 1 : c;
}

std::size_t BallIndex::count_within(const Vec& x, double r) const {
  if (x.dim() != dim_) throw InvalidArgument("count_within: dim mismatch");
  if (r < 0.0) throw InvalidArgument("count_within: negative radius");
  const double r2 = r * r;
  auto in_ball = [&](std::size_t i) {
    const double* p = pts_.data() + i * dim_;
    double s = 0.0;
    for (std::size_t a = 0; a < dim_; ++a) {
      double d = p[a] - x[a];
      s += d * d;
    }
    return s <= r2;
  };
  if (brute_) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n_; ++i) c += in_ball(i);
    return c;
  }

  // Candidate cell ranges, padded by one cell against rounding at the rim.
  std::int64_t clo[kMaxDim], chi[kMaxDim], cur[kMaxDim];
  for (std::size_t a = 0; a < dim_; ++a) {
    double tlo = (x[a] - r - lo_[a]) / cell_;
    double thi = (x[a] + r - lo_[a]) / cell_;
    clo[a] = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(tlo)) - 1);
    chi[a] = std::min<std::int64_t>(static_cast<std::int64_t>(dims_[a]) - 1,
                                    static_cast<std::int64_t>(std::floor(thi)) + 1);
    if (clo[a] > chi[a]) return 0;
    cur[a] = clo[a];
  }

  std::size_t count = 0;
  for (;;) {
    std::size_t id = 0;
    for (std::size_t a = 0; a < dim_; ++a)
      id = id * dims_[a] + static_cast<std::size_t>(cur[a]);
    for (std::uint32_t k = starts_[id]; k < starts_[id + 1]; ++k)
      count += in_ball(order_[k]);
    std::size_t a = dim_;
    while (a-- > 0) {
      if (++cur[a] <= chi[a]) break;
      cur[a] = clo[a];
      if (a == 0) return count;
    }
  }
}

std::vector<double> radii_ladder(double r0, int max_levels) {
  if (!(r0 > 0.0)) throw InvalidArgument("radii_ladder: r0 must be > 0");
  std::vector<double> radii;
  radii.reserve(max_levels + 1);
  double r = r0;
  for (int k = 0; k <= max_levels && r > 0.0; ++k, r *= 0.5) radii.push_back(r);
  return radii;
}

SlopeEstimate local_dimension(const BallIndex& index, const Vec& x,
                              const std::vector<double>& radii,
                              std::size_t min_count) {
  std::vector<double> xs, ys;
  double n = static_cast<double>(index.size());
  for (double r : radii) {
    std::size_t c = index.count_within(x, r);
    if (c < min_count) break;
    xs.push_back(std::log(r));
    ys.push_back(std::log(static_cast<double>(c) / n));
  }
  std::size_t k = xs.size();
  if (k < 3)
    throw InsufficientData("local_dimension: fewer than 3 usable radii");

  double mx = 0.0, my = 0.0;
  for (std::size_t t = 0; t < k; ++t) {
    mx += xs[t];
    my += ys[t];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t t = 0; t < k; ++t) {
    sxx += (xs[t] - mx) * (xs[t] - mx);
    sxy += (xs[t] - mx) * (ys[t] - my);
  }
  double slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t t = 0; t < k; ++t) {
    double e = ys[t] - my - slope * (xs[t] - mx);
    rss += e * e;
  }
  SlopeEstimate est;
  est.slope = slope;
  est.stderr_ = k > 2 ? std::sqrt(rss / (k - 2) / sxx) : 0.0;
  est.radii_used = static_cast<std::uint32_t>(k);
  est.r_largest = radii.front();
  est.r_smallest = radii[k - 1];
  return est;
}

namespace {

double quantile_sorted(const std::vector<double>& v, double q) {
  double pos = q * static_cast<double>(v.size() - 1);
  std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= v.size()) return v.back();
  double f = pos - static_cast<double>(i);
  return v[i] * (1.0 - f) + v[i + 1] * f;
}

}  // namespace

DimensionProfile dimension_profile(const PointCloud& cloud,
                                   const ProfileParams& params,
                                   std::optional<std::pair<double, double>> band) {
  if (cloud.size() < 10)
    throw InsufficientData("dimension_profile: cloud too small");
  if (params.n_centers == 0)
    throw InvalidArgument("dimension_profile: need at least one center");

  auto [lo, hi] = cloud.bbox();
  double diag2 = 0.0;
  for (std::size_t a = 0; a < cloud.dim(); ++a) {
    double w = hi[a] - lo[a];
    diag2 += w * w;
  }
  double r0 = params.r0 > 0.0 ? params.r0 : std::sqrt(diag2) / 8.0;
  if (params.edge_exclusion && params.r0 <= 0.0) {
    // A defaulted window must leave room for interior centers: cap it by the
    // smallest axis extent, or anisotropic clouds lose every candidate.
    double min_ext = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < cloud.dim(); ++a) {
      double w = hi[a] - lo[a];
      if (w > 0.0) min_ext = std::min(min_ext, w);
    }
    if (std::isfinite(min_ext)) r0 = std::min(r0, min_ext / 3.0);
  }
  if (!(r0 > 0.0))
    throw InsufficientData("dimension_profile: degenerate cloud extent");
  std::vector<double> radii = radii_ladder(r0, params.max_levels);

  // Draw candidate centers without replacement (partial Fisher-Yates), then
  // apply the edge rule if requested.
  std::size_t n = cloud.size();
  std::vector<std::uint32_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);
  Pcg32 rng(params.seed, 0);
  DimensionProfile prof;
  prof.r0 = r0;
  for (std::size_t k = 0; k < n && prof.center_ids.size() < params.n_centers; ++k) {
    std::size_t j = k + rng.next_below(static_cast<std::uint32_t>(n - k));
    std::swap(perm[k], perm[j]);
    std::uint32_t cand = perm[k];
    if (params.edge_exclusion) {
      const double* p = cloud.row(cand);
      bool interior = true;
      for (std::size_t a = 0; a < cloud.dim(); ++a)
        if (p[a] - r0 < lo[a] || p[a] + r0 > hi[a]) {
          interior = false;
          break;
        }
      if (!interior) {
        ++prof.excluded_edge;
        continue;
      }
    }
    prof.center_ids.push_back(cand);
  }
  if (prof.center_ids.empty())
    throw InsufficientData(
        "dimension_profile: no usable centers (every candidate failed the "
        "edge rule; try a smaller r0)");

  BallIndex index(cloud, r0 / 8.0);
  std::size_t m = prof.center_ids.size();
  std::vector<SlopeEstimate> raw(m);
  std::vector<char> ok(m, 0);
  parallel_for(m, params.workers, [&](std::size_t t) {
    try {
      raw[t] = local_dimension(index, cloud.point(prof.center_ids[t]), radii,
                               params.min_count);
      ok[t] = 1;
    } catch (const InsufficientData&) {
      ok[t] = 0;
    }
  });

  std::vector<std::uint32_t> kept_ids;
  for (std::size_t t = 0; t < m; ++t) {
    if (ok[t]) {
      kept_ids.push_back(prof.center_ids[t]);
      prof.slopes.push_back(raw[t]);
    } else {
      ++prof.excluded_insufficient;
    }
  }
  prof.center_ids = std::move(kept_ids);
  if (prof.slopes.empty())
    throw InsufficientData("dimension_profile: every center ran out of data");

  std::vector<double> sorted;
  sorted.reserve(prof.slopes.size());
  for (const auto& s : prof.slopes) sorted.push_back(s.slope);
  std::sort(sorted.begin(), sorted.end());
  prof.q10 = quantile_sorted(sorted, 0.10);
  prof.q50 = quantile_sorted(sorted, 0.50);
  prof.q90 = quantile_sorted(sorted, 0.90);

  if (band) {
    prof.band_lo = band->first;
    prof.band_hi = band->second;
    std::size_t in = 0;
    for (double s : sorted) in += (s >= prof.band_lo && s <= prof.band_hi);
    prof.coverage = static_cast<double>(in) / static_cast<double>(sorted.size());
  }
  return prof;
}

}  // namespace ifs
