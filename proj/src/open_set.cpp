#include "ifs/open_set.hpp"

#include <cmath>

#include "ifs/rng.hpp"

namespace ifs {

namespace {

struct SetImage {
  enum class Kind { Box, Ball, None } kind = Kind::None;
  Vec lo, hi;
  Vec center;
  double radius = 0.0;
};

bool is_origin(const Vec& v) {
  for (std::size_t a = 0; a < v.dim(); ++a)
    if (v[a] != 0.0) return false;
  return true;
}

// Exact image of O under m, when the pair admits one.
SetImage image_of(const MapSpec& m, const OpenSetSpec& O) {
  SetImage img;
  if (O.kind == OpenSetKind::OpenBox && m.kind == MapKind::AffineDiagonal) {
    img.kind = SetImage::Kind::Box;
    img.lo = Vec(O.dim);
    img.hi = Vec(O.dim);
    for (std::size_t a = 0; a < O.dim; ++a) {
      double u = m.factors[a] * O.lo[a] + m.translate[a];
      double v = m.factors[a] * O.hi[a] + m.translate[a];
      img.lo[a] = std::min(u, v);
      img.hi[a] = std::max(u, v);
    }
    return img;
  }
  if (O.kind == OpenSetKind::OpenBall) {
    if (m.kind == MapKind::RadialScaling && is_origin(O.center)) {
      img.kind = SetImage::Kind::Ball;
      img.center = m.translate;
      img.radius = m.radial_g(O.radius);
      return img;
    }
    if (m.kind != MapKind::RadialScaling && m.is_similitude()) {
      img.kind = SetImage::Kind::Ball;
      img.center = m.apply(O.center);
      img.radius = m.similitude_ratio() * O.radius;
      return img;
    }
  }
  return img;
}

double dist_point_to_box(const Vec& x, const Vec& lo, const Vec& hi) {
  double s2 = 0.0;
  for (std::size_t a = 0; a < x.dim(); ++a) {
    double d = 0.0;
    if (x[a] < lo[a]) d = lo[a] - x[a];
    else if (x[a] > hi[a]) d = x[a] - hi[a];
    s2 += d * d;
  }
  return std::sqrt(s2);
}

// Deterministic points on (or near) the boundary of O plus interior fill.
std::vector<Vec> probe_points(const OpenSetSpec& O, std::size_t count,
                              std::uint64_t stream) {
  Pcg32 rng(0xB0DAu, stream);
  std::vector<Vec> pts;
  pts.reserve(count);
  if (O.kind == OpenSetKind::OpenBall) {
    for (std::size_t k = 0; k < count; ++k) {
      Vec dir(O.dim);
      double n2 = 0.0;
      for (std::size_t a = 0; a < O.dim; ++a) {
        double u1 = std::max(rng.next_double(), 1e-300);
        double u2 = rng.next_double();
        dir[a] = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        n2 += dir[a] * dir[a];
      }
      double n = std::sqrt(n2);
      if (n == 0.0) continue;
      // Alternate boundary shells and interior radii.
      double frac = (k % 2 == 0) ? 1.0 : rng.next_double();
      Vec p(O.dim);
      for (std::size_t a = 0; a < O.dim; ++a)
        p[a] = O.center[a] + O.radius * frac * dir[a] / n;
      pts.push_back(p);
    }
    return pts;
  }
  for (std::size_t k = 0; k < count; ++k) {
    Vec p(O.dim);
    for (std::size_t a = 0; a < O.dim; ++a) {
      double w = O.hi[a] - O.lo[a];
      double u = rng.next_double();
      p[a] = std::isfinite(w) ? O.lo[a] + u * w : O.lo[a] + u * O.scale() * 4.0;
    }
    if (k % 2 == 0) {
      // Project onto a random face to hit the boundary.
      std::size_t axis = rng.next_u32() % O.dim;
      bool high = rng.next_u32() & 1;
      double edge = high ? O.hi[axis] : O.lo[axis];
      if (std::isfinite(edge)) p[axis] = edge;
    }
    pts.push_back(p);
  }
  return pts;
}

OscPerMap check_containment(const MapSpec& m, Symbol idx, const OpenSetSpec& O) {
  double tol = 1e-9 * O.scale();
  SetImage img = image_of(m, O);
  if (img.kind == SetImage::Kind::Box && O.kind == OpenSetKind::OpenBox) {
    bool ok = true;
    for (std::size_t a = 0; a < O.dim; ++a)
      if (!(img.lo[a] >= O.lo[a] && img.hi[a] <= O.hi[a])) ok = false;
    return {idx, ok, "box"};
  }
  if (img.kind == SetImage::Kind::Ball && O.kind == OpenSetKind::OpenBall) {
    bool ok = distance(img.center, O.center) + img.radius <= O.radius + tol;
    return {idx, ok, "ball"};
  }
  if (img.kind == SetImage::Kind::Box && O.kind == OpenSetKind::OpenBall) {
    double worst = 0.0;
    for (std::size_t corner = 0; corner < (1u << O.dim); ++corner) {
      Vec c(O.dim);
      for (std::size_t a = 0; a < O.dim; ++a)
        c[a] = (corner >> a) & 1 ? img.hi[a] : img.lo[a];
      worst = std::max(worst, distance(c, O.center));
    }
    return {idx, worst <= O.radius + tol, "box-in-ball"};
  }
  if (img.kind == SetImage::Kind::Ball && O.kind == OpenSetKind::OpenBox) {
    bool ok = true;
    for (std::size_t a = 0; a < O.dim; ++a)
      if (!(img.center[a] - img.radius >= O.lo[a] &&
            img.center[a] + img.radius <= O.hi[a]))
        ok = false;
    return {idx, ok, "ball-in-box"};
  }
  for (const Vec& p : probe_points(O, 10000, idx)) {
    if (!O.closure_contains(m.apply(p), tol)) return {idx, false, "sampled"};
  }
  return {idx, true, "sampled"};
}

OscPerPair check_disjoint(Symbol i, Symbol j, const MapSpec& mi,
                          const MapSpec& mj, const OpenSetSpec& O) {
  double tol = 1e-9 * O.scale();
  SetImage a = image_of(mi, O), b = image_of(mj, O);
  if (a.kind == SetImage::Kind::Box && b.kind == SetImage::Kind::Box) {
    bool disjoint = false;
    for (std::size_t ax = 0; ax < O.dim; ++ax)
      if (a.hi[ax] <= b.lo[ax] || b.hi[ax] <= a.lo[ax]) disjoint = true;
    return {i, j, disjoint, "box"};
  }
  if (a.kind == SetImage::Kind::Ball && b.kind == SetImage::Kind::Ball) {
    bool disjoint = distance(a.center, b.center) >= a.radius + b.radius - tol;
    return {i, j, disjoint, "ball"};
  }
  if (a.kind != SetImage::Kind::None && b.kind != SetImage::Kind::None) {
    const SetImage& box = a.kind == SetImage::Kind::Box ? a : b;
    const SetImage& ball = a.kind == SetImage::Kind::Box ? b : a;
    bool disjoint =
        dist_point_to_box(ball.center, box.lo, box.hi) >= ball.radius - tol;
    return {i, j, disjoint, "box-ball"};
  }
  // Sampled route: push probe points of O through w_i and ask whether any
  // lands strictly inside w_j(O), via the inverse of w_j.
  for (const Vec& p : probe_points(O, 10000, (static_cast<std::uint64_t>(i) << 20) + j)) {
    if (!O.contains_strict(p)) continue;
    Vec y = mi.apply(p);
    try {
      Vec z = mj.apply_inverse(y);
      // Shrink strictly by tol so boundary contact does not count as overlap.
      if (O.contains_strict(z) && !O.closure_contains(z, -tol))
        return {i, j, false, "sampled-inverse"};
    } catch (const DomainError&) {
    }
  }
  return {i, j, true, "sampled-inverse"};
}

}  // namespace

OscReport check_osc(const IfsSystem& sys, const OpenSetSpec& O, Symbol horizon) {
  if (O.dim != sys.space().dim)
    throw InvalidArgument("check_osc: open set dim mismatch");
  OscReport rep;
  Symbol n = sys.is_finite() ? static_cast<Symbol>(sys.map_count()) : horizon;
  rep.horizon = n;

  std::vector<MapSpec> maps;
  maps.reserve(n);
  for (Symbol i = 1; i <= n; ++i) {
    maps.push_back(sys.map_spec(i));
    if (maps.back().dim != O.dim)
      throw InvalidArgument("check_osc: map dim mismatch");
  }

  rep.all_contained = true;
  for (Symbol i = 1; i <= n; ++i) {
    rep.containment.push_back(check_containment(maps[i - 1], i, O));
    rep.all_contained = rep.all_contained && rep.containment.back().contained;
  }

  rep.all_disjoint = true;
  for (Symbol i = 1; i <= n; ++i)
    for (Symbol j = i + 1; j <= n; ++j) {
      rep.pairs.push_back(check_disjoint(i, j, maps[i - 1], maps[j - 1], O));
      rep.all_disjoint = rep.all_disjoint && rep.pairs.back().disjoint;
    }

  if (sys.is_finite()) {
    rep.tail = "complete";
  } else {
    const FamilyStructure& st = sys.family().structure();
    if (st.containment_analytic && st.disjointness_analytic) {
      rep.tail = "analytic";
      rep.tail_note = st.note;
    } else {
      rep.tail = "horizon";
      rep.tail_note = "indices beyond the horizon were not checked";
    }
  }
  return rep;
}

MassCheck support_mass(const PointCloud& cloud, const OpenSetSpec& O) {
  if (cloud.size() == 0) throw InvalidArgument("support_mass: empty cloud");
  if (cloud.dim() != O.dim) throw InvalidArgument("support_mass: dim mismatch");
  MassCheck mc;
  mc.total = cloud.size();
  for (std::size_t k = 0; k < cloud.size(); ++k)
    mc.inside += O.contains_strict(cloud.point(k));
  mc.fraction = static_cast<double>(mc.inside) / static_cast<double>(mc.total);
  double sd = std::sqrt(mc.fraction * (1.0 - mc.fraction) /
                        static_cast<double>(mc.total));
  mc.ci_lo = mc.fraction - 3.0 * sd;
  mc.ci_hi = mc.fraction + 3.0 * sd;
  mc.positive = mc.ci_lo > 0.0;
  return mc;
}

}  // namespace ifs
