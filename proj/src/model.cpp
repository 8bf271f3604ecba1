#include "ifs/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ifs/errors.hpp"

namespace ifs {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelTol = 1e-9;
}  // namespace

// ------------------------------------------------------------------ spaces

SpaceSpec SpaceSpec::box(Vec lo, Vec hi) {
  if (lo.dim() != hi.dim()) throw InvalidArgument("space box: dim mismatch");
  SpaceSpec s;
  s.kind = SpaceKind::Box;
  s.dim = lo.dim();
  s.lo = lo;
  s.hi = hi;
  return s;
}

SpaceSpec SpaceSpec::ball(Vec center, double radius) {
  SpaceSpec s;
  s.kind = SpaceKind::Ball;
  s.dim = center.dim();
  s.center = center;
  s.radius = radius;
  return s;
}

bool SpaceSpec::contains(const Vec& x, double tol) const {
  if (x.dim() != dim) return false;
  if (kind == SpaceKind::Box) {
    for (std::size_t a = 0; a < dim; ++a)
      if (!(x[a] >= lo[a] - tol && x[a] <= hi[a] + tol)) return false;
    return true;
  }
  return distance(x, center) <= radius + tol;
}

bool SpaceSpec::bounded() const {
  if (kind == SpaceKind::Ball) return true;
  for (std::size_t a = 0; a < dim; ++a)
    if (std::isinf(lo[a]) || std::isinf(hi[a])) return false;
  return true;
}

double SpaceSpec::scale() const {
  if (kind == SpaceKind::Ball) return 2.0 * radius;
  double s2 = 0.0;
  for (std::size_t a = 0; a < dim; ++a) {
    double w = hi[a] - lo[a];
    if (std::isfinite(w)) s2 += w * w;
  }
  return s2 > 0.0 ? std::sqrt(s2) : 1.0;
}

Vec SpaceSpec::reference_point() const {
  if (kind == SpaceKind::Ball) return center;
  Vec p(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    bool lf = std::isfinite(lo[a]), hf = std::isfinite(hi[a]);
    if (lf && hf)
      p[a] = 0.5 * (lo[a] + hi[a]);
    else if (lf)
      p[a] = lo[a];
    else if (hf)
      p[a] = hi[a];
    else
      p[a] = 0.0;
  }
  return p;
}

Vec SpaceSpec::sample_point(Pcg32& rng, int level) const {
  if (kind == SpaceKind::Ball) {
    // Direction from Gaussian components, radius by the d-th root rule.
    Vec dir(dim);
    double n2 = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      double u1 = std::max(rng.next_double(), 1e-300);
      double u2 = rng.next_double();
      dir[a] = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
      n2 += dir[a] * dir[a];
    }
    double n = std::sqrt(n2);
    if (n == 0.0) return center;
    double r = radius * std::pow(rng.next_double(), 1.0 / static_cast<double>(dim));
    Vec p(dim);
    for (std::size_t a = 0; a < dim; ++a) p[a] = center[a] + r * dir[a] / n;
    return p;
  }
  double window = scale() * std::ldexp(1.0, level);
  Vec p(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    double u = rng.next_double();
    bool lf = std::isfinite(lo[a]), hf = std::isfinite(hi[a]);
    if (lf && hf)
      p[a] = lo[a] + u * (hi[a] - lo[a]);
    else if (lf)
      p[a] = lo[a] + u * window;
    else if (hf)
      p[a] = hi[a] - u * window;
    else
      p[a] = (u - 0.5) * 2.0 * window;
  }
  return p;
}

// -------------------------------------------------------------------- maps

MapSpec MapSpec::affine_diagonal(std::vector<double> factors, Vec translate) {
  if (factors.size() != translate.dim())
    throw InvalidArgument("affine_diagonal: dim mismatch");
  MapSpec m;
  m.kind = MapKind::AffineDiagonal;
  m.dim = factors.size();
  m.factors = std::move(factors);
  m.translate = translate;
  double lo = kInf, hi = 0.0;
  for (double f : m.factors) {
    lo = std::min(lo, std::abs(f));
    hi = std::max(hi, std::abs(f));
  }
  m.lower_lipschitz = lo;
  m.upper_lipschitz = hi;
  return m;
}

MapSpec MapSpec::affine_general(std::size_t dim, std::vector<double> matrix,
                                Vec translate, double lower, double upper) {
  if (matrix.size() != dim * dim || translate.dim() != dim)
    throw InvalidArgument("affine_general: dim mismatch");
  MapSpec m;
  m.kind = MapKind::AffineGeneral;
  m.dim = dim;
  m.matrix = std::move(matrix);
  m.translate = translate;
  m.lower_lipschitz = lower;
  m.upper_lipschitz = upper;
  return m;
}

MapSpec MapSpec::radial(std::size_t dim, double alpha, double beta, double kappa,
                        Vec translate, double lower, double upper) {
  if (translate.dim() != dim) throw InvalidArgument("radial: dim mismatch");
  MapSpec m;
  m.kind = MapKind::RadialScaling;
  m.dim = dim;
  m.alpha = alpha;
  m.beta = beta;
  m.kappa = kappa;
  m.translate = translate;
  m.lower_lipschitz = lower;
  m.upper_lipschitz = upper;
  return m;
}

Vec MapSpec::apply(const Vec& x) const {
  if (x.dim() != dim) throw DomainError("map: point dim mismatch");
  Vec y(dim);
  switch (kind) {
    case MapKind::AffineDiagonal:
      for (std::size_t a = 0; a < dim; ++a) y[a] = factors[a] * x[a] + translate[a];
      return y;
    case MapKind::AffineGeneral:
      for (std::size_t r = 0; r < dim; ++r) {
        double acc = translate[r];
        for (std::size_t c = 0; c < dim; ++c) acc += matrix[r * dim + c] * x[c];
        y[r] = acc;
      }
      return y;
    case MapKind::RadialScaling: {
      double s = alpha + beta * std::pow(x.norm(), kappa);
      for (std::size_t a = 0; a < dim; ++a) y[a] = s * x[a] + translate[a];
      return y;
    }
  }
  throw UnsupportedMap("map: unknown kind");
}

namespace {

Vec solve_linear(std::size_t d, const std::vector<double>& matrix, const Vec& rhs) {
  double a[kMaxDim][kMaxDim + 1];
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) a[r][c] = matrix[r * d + c];
    a[r][d] = rhs[r];
  }
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-300)
      throw UnsupportedMap("affine map is not invertible");
    if (piv != col)
      for (std::size_t c = col; c <= d; ++c) std::swap(a[piv][c], a[col][c]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col) continue;
      double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= d; ++c) a[r][c] -= f * a[col][c];
    }
  }
  Vec x(d);
  for (std::size_t r = 0; r < d; ++r) x[r] = a[r][d] / a[r][r];
  return x;
}

}  // namespace

double MapSpec::radial_g(double r) const {
  return r * (alpha + beta * std::pow(r, kappa));
}

double MapSpec::radial_g_inverse(double t, double r_max) const {
  if (t <= 0.0) return 0.0;
  double hi = r_max;
  if (beta < 0.0) {
    // g is increasing while g'(r) = alpha + beta (1+kappa) r^kappa > 0.
    double r_star = std::pow(alpha / (-beta * (1.0 + kappa)), 1.0 / kappa);
    hi = std::min(hi, r_star);
  }
  if (t > radial_g(hi) * (1.0 + 1e-12))
    throw DomainError("radial inverse: target outside the invertible range");
  double lo = 0.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-16 * std::max(1.0, hi); ++it) {
    double mid = 0.5 * (lo + hi);
    (radial_g(mid) < t ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Vec MapSpec::apply_inverse(const Vec& y) const {
  if (y.dim() != dim) throw DomainError("map: point dim mismatch");
  Vec x(dim);
  switch (kind) {
    case MapKind::AffineDiagonal:
      for (std::size_t a = 0; a < dim; ++a) {
        if (factors[a] == 0.0) throw UnsupportedMap("affine map is not invertible");
        x[a] = (y[a] - translate[a]) / factors[a];
      }
      return x;
    case MapKind::AffineGeneral: {
      Vec rhs(dim);
      for (std::size_t a = 0; a < dim; ++a) rhs[a] = y[a] - translate[a];
      return solve_linear(dim, matrix, rhs);
    }
    case MapKind::RadialScaling: {
      Vec d(dim);
      double t2 = 0.0;
      for (std::size_t a = 0; a < dim; ++a) {
        d[a] = y[a] - translate[a];
        t2 += d[a] * d[a];
      }
      double t = std::sqrt(t2);
      if (t == 0.0) return Vec(dim);
      double r = radial_g_inverse(t, 1e12);
      double s = alpha + beta * std::pow(r, kappa);
      for (std::size_t a = 0; a < dim; ++a) x[a] = d[a] / s;
      return x;
    }
  }
  throw UnsupportedMap("map: unknown kind");
}

bool MapSpec::is_similitude() const {
  switch (kind) {
    case MapKind::AffineDiagonal: {
      for (std::size_t a = 1; a < dim; ++a)
        if (std::abs(factors[a]) != std::abs(factors[0])) return false;
      return true;
    }
    case MapKind::AffineGeneral: {
      // Columns pairwise orthogonal with equal norms.
      double n0 = 0.0;
      for (std::size_t r = 0; r < dim; ++r) n0 += matrix[r * dim] * matrix[r * dim];
      for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t c2 = c; c2 < dim; ++c2) {
          double dot = 0.0;
          for (std::size_t r = 0; r < dim; ++r)
            dot += matrix[r * dim + c] * matrix[r * dim + c2];
          double want = (c == c2) ? n0 : 0.0;
          if (std::abs(dot - want) > 1e-12 * std::max(1.0, n0)) return false;
        }
      return true;
    }
    case MapKind::RadialScaling:
      return beta == 0.0;
  }
  return false;
}

double MapSpec::similitude_ratio() const {
  if (!is_similitude()) throw UnsupportedMap("map is not a similitude");
  switch (kind) {
    case MapKind::AffineDiagonal:
      return std::abs(factors[0]);
    case MapKind::AffineGeneral: {
      double n0 = 0.0;
      for (std::size_t r = 0; r < dim; ++r) n0 += matrix[r * dim] * matrix[r * dim];
      return std::sqrt(n0);
    }
    case MapKind::RadialScaling:
      return std::abs(alpha);
  }
  throw UnsupportedMap("map: unknown kind");
}

// ---------------------------------------------------------- infinite families

MapFamily::MapFamily(std::function<MapSpec(Symbol)> generator,
                     SeriesEnvelopes envelopes, FamilyStructure structure,
                     std::string kind_name)
    : generator_(std::move(generator)),
      envelopes_(envelopes),
      structure_(std::move(structure)),
      kind_name_(std::move(kind_name)) {
  if (!generator_) throw InvalidArgument("MapFamily: null generator");
}

MapSpec MapFamily::at(Symbol i) const {
  if (i < 1) throw DomainError("MapFamily: indices are 1-based");
  return generator_(i);
}

MapFamily geometric_slices_family(double scale, double ratio, double slope,
                                  double height) {
  if (!(scale > 0.0) || !(ratio > 0.0 && ratio < 1.0) || slope < 0.0 ||
      !(height > 0.0))
    throw InvalidArgument("geometric_slices_family: bad parameters");
  double total = scale * ratio / (1.0 - ratio);
  if (total > height * (1.0 + 1e-12))
    throw InvalidArgument("geometric_slices_family: slices overflow the height");

  auto gen = [scale, ratio, slope](Symbol i) {
    // gamma_k = scale * ratio^k by repeated multiplication; the height of
    // slice i is the running sum of gamma_1..gamma_{i-1}, accumulated in the
    // same order every call so translations are bitwise reproducible and
    // consecutive slice images share their boundary exactly.
    double g = scale;
    double cum = 0.0;
    for (Symbol k = 1; k <= i; ++k) {
      g *= ratio;
      if (k < i) cum += g;
    }
    double gamma = g;
    double Gamma = gamma + slope * static_cast<double>(i);
    return MapSpec::affine_diagonal({Gamma, gamma},
                                    Vec{static_cast<double>(i - 1), cum});
  };

  SeriesEnvelopes env;
  double c = scale, rho = ratio;
  env.expansion = {c * rho, slope, 1};
  env.displacement0 = {total, 1.0, 1};
  env.abs_log_lower = {std::abs(std::log(c)), std::abs(std::log(rho)), 1};
  if (slope > 0.0)
    env.abs_log_expansion = {std::abs(std::log(c)) +
                                 std::abs(std::log(c * rho + slope)),
                             std::abs(std::log(rho)) + 1.0, 1};
  else
    env.abs_log_expansion = env.abs_log_lower;

  FamilyStructure st;
  if (height == 1.0 && total <= 1.0 + 1e-12) {
    st.containment_analytic = true;
    st.disjointness_analytic = true;
    st.note =
        "slice images stack along the second axis with touching boundaries; "
        "every index maps the strip into itself and distinct open slices are "
        "disjoint by the running-sum construction";
  }

  MapFamily fam(gen, env, st, "geometric-slices");
  fam.params = {{"scale", scale}, {"ratio", ratio}, {"slope", slope},
                {"height", height}};
  return fam;
}

// -------------------------------------------------------------- open sets

OpenSetSpec OpenSetSpec::open_box(Vec lo, Vec hi) {
  if (lo.dim() != hi.dim()) throw InvalidArgument("open box: dim mismatch");
  OpenSetSpec o;
  o.kind = OpenSetKind::OpenBox;
  o.dim = lo.dim();
  o.lo = lo;
  o.hi = hi;
  return o;
}

OpenSetSpec OpenSetSpec::open_ball(Vec center, double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("open ball: radius must be > 0");
  OpenSetSpec o;
  o.kind = OpenSetKind::OpenBall;
  o.dim = center.dim();
  o.center = center;
  o.radius = radius;
  return o;
}

bool OpenSetSpec::contains_strict(const Vec& x) const {
  if (x.dim() != dim) return false;
  if (kind == OpenSetKind::OpenBox) {
    for (std::size_t a = 0; a < dim; ++a)
      if (!(x[a] > lo[a] && x[a] < hi[a])) return false;
    return true;
  }
  return distance(x, center) < radius;
}

bool OpenSetSpec::closure_contains(const Vec& x, double tol) const {
  if (x.dim() != dim) return false;
  if (kind == OpenSetKind::OpenBox) {
    for (std::size_t a = 0; a < dim; ++a)
      if (!(x[a] >= lo[a] - tol && x[a] <= hi[a] + tol)) return false;
    return true;
  }
  return distance(x, center) <= radius + tol;
}

double OpenSetSpec::scale() const {
  if (kind == OpenSetKind::OpenBall) return 2.0 * radius;
  double s2 = 0.0;
  for (std::size_t a = 0; a < dim; ++a) {
    double w = hi[a] - lo[a];
    if (std::isfinite(w)) s2 += w * w;
  }
  return s2 > 0.0 ? std::sqrt(s2) : 1.0;
}

// ------------------------------------------------------------------ system

IfsSystem::IfsSystem(std::string name, SpaceSpec space, std::vector<MapSpec> maps,
                     ProbabilityVector probabilities)
    : name_(std::move(name)),
      space_(space),
      maps_(std::move(maps)),
      prob_(std::move(probabilities)) {
  if (maps_.empty()) throw InvalidArgument("IfsSystem: no maps");
  if (!prob_.is_finite() || prob_.index_limit() != maps_.size())
    throw InvalidArgument("IfsSystem: probability count must match map count");
}

IfsSystem::IfsSystem(std::string name, SpaceSpec space, MapFamily family,
                     ProbabilityVector probabilities)
    : name_(std::move(name)),
      space_(space),
      family_(std::make_shared<MapFamily>(std::move(family))),
      prob_(std::move(probabilities)) {
  std::size_t limit = prob_.index_limit();
  maps_.reserve(limit);
  for (Symbol i = 1; i <= limit; ++i) maps_.push_back(family_->at(i));
}

const MapFamily& IfsSystem::family() const {
  if (!family_) throw DomainError("finite system has no map family");
  return *family_;
}

std::size_t IfsSystem::map_count() const { return maps_.size(); }

MapSpec IfsSystem::map_spec(Symbol i) const {
  if (i < 1) throw DomainError("map index is 1-based");
  if (i <= maps_.size()) return maps_[i - 1];
  if (family_) return family_->at(i);
  throw DomainError("map index out of range");
}

const MapSpec& IfsSystem::sampled_map(Symbol i) const {
  if (i < 1 || i > maps_.size()) throw DomainError("map index out of range");
  return maps_[i - 1];
}

Vec IfsSystem::apply_map(Symbol i, const Vec& x) const {
  return i <= maps_.size() ? maps_[i - 1].apply(x) : map_spec(i).apply(x);
}

Vec IfsSystem::apply_inverse_map(Symbol i, const Vec& y) const {
  return i <= maps_.size() ? maps_[i - 1].apply_inverse(y)
                           : map_spec(i).apply_inverse(y);
}

// -------------------------------------------------------------- validation

std::string ValidationReport::summary() const {
  if (issues.empty()) return "ok";
  std::ostringstream os;
  for (const auto& v : issues) {
    os << v.code;
    if (v.map_index >= 0) os << " (map " << v.map_index << ")";
    os << ": " << v.message << "\n";
  }
  return os.str();
}

namespace {

void check_map(const IfsSystem& sys, Symbol idx, const MapSpec& m,
               ValidationReport& rep) {
  auto issue = [&](const char* code, std::string msg) {
    rep.issues.push_back({code, std::move(msg), static_cast<std::int64_t>(idx)});
  };
  const SpaceSpec& X = sys.space();
  if (m.dim != X.dim) {
    issue("map.dim", "map dimension does not match the space");
    return;
  }
  if (!(m.lower_lipschitz > 0.0) || m.lower_lipschitz > m.upper_lipschitz) {
    issue("map.band", "need 0 < lower_lipschitz <= upper_lipschitz");
    return;
  }
  if (m.kind == MapKind::AffineDiagonal) {
    double lo = kInf, hi = 0.0;
    for (double f : m.factors) {
      lo = std::min(lo, std::abs(f));
      hi = std::max(hi, std::abs(f));
    }
    if (std::abs(lo - m.lower_lipschitz) > kRelTol * lo ||
        std::abs(hi - m.upper_lipschitz) > kRelTol * hi)
      issue("map.factors", "declared band does not match the diagonal factors");
  }
  if (m.kind == MapKind::RadialScaling) {
    // Positivity of the factor field and monotonicity of g(r) = r*s(r) on
    // the relevant radius range, so the map stays injective there.
    double R = (X.kind == SpaceKind::Ball) ? X.radius : X.scale();
    double worst_r = (m.beta < 0.0) ? R : 0.0;
    double s_end = m.alpha + m.beta * std::pow(worst_r, m.kappa);
    if (!(s_end > 0.0)) issue("map.radial", "factor field is not positive");
    double gp_end = m.alpha + m.beta * (1.0 + m.kappa) * std::pow(worst_r, m.kappa);
    if (!(gp_end > 0.0))
      issue("map.radial-monotone", "radial profile g(r) is not increasing");
  }

  // Empirical two-point Lipschitz band and range check on sampled points.
  Pcg32 rng(0x1F5u, idx);
  double tol = kRelTol * std::max(1.0, X.scale());
  for (int t = 0; t < 512; ++t) {
    Vec x = X.sample_point(rng, t % 3);
    Vec y = X.sample_point(rng, t % 3);
    Vec wx = m.apply(x);
    if (!X.contains(wx, tol)) {
      issue("map.range", "map sends sampled points outside the space");
      break;
    }
    double dxy = distance(x, y);
    if (dxy == 0.0) continue;
    double ratio = distance(wx, m.apply(y)) / dxy;
    if (ratio < m.lower_lipschitz * (1.0 - 1e-9) ||
        ratio > m.upper_lipschitz * (1.0 + 1e-9)) {
      issue("map.lipschitz", "sampled distortion leaves the declared band");
      break;
    }
  }
}

}  // namespace

ValidationReport validate(const IfsSystem& sys) {
  ValidationReport rep;
  auto issue = [&](const char* code, std::string msg) {
    rep.issues.push_back({code, std::move(msg), -1});
  };

  const SpaceSpec& X = sys.space();
  if (X.dim < 1 || X.dim > kMaxDim) issue("space.dim", "unsupported dimension");
  if (X.kind == SpaceKind::Box) {
    for (std::size_t a = 0; a < X.dim; ++a)
      if (!(X.lo[a] < X.hi[a])) issue("space.extent", "box needs lo < hi per axis");
  } else if (!(X.radius > 0.0)) {
    issue("space.extent", "ball needs a positive radius");
  }

  double defect = 0.0;
  for (std::uint32_t n : {1u, 10u, 100u, 1000u})
    defect = std::max(defect, sys.probabilities().normalization_defect(n));
  if (defect > 1e-12) issue("prob.normalization", "probabilities do not sum to 1");

  std::size_t probe = std::min<std::size_t>(sys.map_count(), 50);
  for (Symbol i = 1; i <= probe; ++i) check_map(sys, i, sys.sampled_map(i), rep);

  if (!sys.is_finite()) {
    const auto& env = sys.family().envelopes();
    for (Symbol i = 1; i <= 200; ++i) {
      MapSpec m = sys.family().at(i);
      double slack = 1e-12;
      bool ok =
          (i < env.expansion.i0 || m.upper_lipschitz <= env.expansion.eval(i) + slack) &&
          (i < env.displacement0.i0 ||
           m.apply(Vec(X.dim)).norm() <= env.displacement0.eval(i) + slack) &&
          (i < env.abs_log_expansion.i0 ||
           std::abs(std::log(m.upper_lipschitz)) <=
               env.abs_log_expansion.eval(i) + slack) &&
          (i < env.abs_log_lower.i0 ||
           std::abs(std::log(m.lower_lipschitz)) <=
               env.abs_log_lower.eval(i) + slack);
      if (!ok) {
        rep.issues.push_back({"family.envelope",
                              "family term escapes its declared envelope",
                              static_cast<std::int64_t>(i)});
        break;
      }
    }
  }
  return rep;
}

}  // namespace ifs
