#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ifs/probability.hpp"
#include "ifs/rng.hpp"
#include "ifs/vec.hpp"

namespace ifs {

// ------------------------------------------------------------------ spaces

enum class SpaceKind { Box, Ball };

// Closed subset of R^d serving as the state space: an axis-aligned box whose
// bounds may be infinite, or a closed ball.
struct SpaceSpec {
  SpaceKind kind = SpaceKind::Box;
  std::size_t dim = 1;
  Vec lo, hi;       // box
  Vec center;       // ball
  double radius = 0.0;

  static SpaceSpec box(Vec lo, Vec hi);
  static SpaceSpec ball(Vec center, double radius);

  bool contains(const Vec& x, double tol = 0.0) const;
  bool bounded() const;

  // A finite characteristic length, used for tolerance and radius defaults:
  // box diagonal over finite extents (1 if none), or the ball diameter.
  double scale() const;

  // Deterministic interior-ish reference point: box midpoint (finite axes;
  // lo or 0 on half-infinite axes), or the ball center.
  Vec reference_point() const;

  // Uniform draw from the space intersected with a bounding window that
  // doubles with `level` (only relevant for unbounded boxes).
  Vec sample_point(Pcg32& rng, int level = 0) const;
};

// -------------------------------------------------------------------- maps

enum class MapKind { AffineDiagonal, AffineGeneral, RadialScaling };

// One map of the system together with its declared bi-Lipschitz band
// 0 < lower_lipschitz <= upper_lipschitz. Kinds:
//   AffineDiagonal  x -> diag(factors) x + translate
//   AffineGeneral   x -> M x + translate            (row-major matrix)
//   RadialScaling   x -> s(|x|) x + translate, s(r) = alpha + beta r^kappa
struct MapSpec {
  MapKind kind = MapKind::AffineDiagonal;
  std::size_t dim = 1;
  std::vector<double> factors;   // AffineDiagonal
  std::vector<double> matrix;    // AffineGeneral, dim*dim row-major
  Vec translate;
  double alpha = 0.0, beta = 0.0, kappa = 1.0;  // RadialScaling
  double lower_lipschitz = 0.0;
  double upper_lipschitz = 0.0;

  static MapSpec affine_diagonal(std::vector<double> factors, Vec translate);
  static MapSpec affine_general(std::size_t dim, std::vector<double> matrix,
                                Vec translate, double lower, double upper);
  static MapSpec radial(std::size_t dim, double alpha, double beta, double kappa,
                        Vec translate, double lower, double upper);

  Vec apply(const Vec& x) const;

  // Exact inverse where one exists (diagonal and radial always; general
  // affine via Gaussian elimination). Throws UnsupportedMap for singular
  // matrices.
  Vec apply_inverse(const Vec& y) const;

  bool is_similitude() const;  // |factor| equal on all axes, or scalar matrix
  double similitude_ratio() const;

  // RadialScaling helpers: g(r) = r * s(r) = |w(x) - translate| for |x| = r.
  double radial_g(double r) const;
  double radial_g_inverse(double t, double r_max) const;
};

// ---------------------------------------------------------- infinite families

// Affine-in-index envelope |term_i| <= a + b*i for all i >= i0, used to bound
// series tails through the law's tail_mass / tail_first_moment.
struct AffineEnvelope {
  double a = 0.0;
  double b = 0.0;
  std::uint32_t i0 = 1;
  double eval(std::uint32_t i) const { return a + b * static_cast<double>(i); }
};

struct SeriesEnvelopes {
  AffineEnvelope expansion;        // Gamma_i
  AffineEnvelope displacement0;    // |w_i(0)|
  AffineEnvelope abs_log_expansion;
  AffineEnvelope abs_log_lower;
};

// Structural facts about an infinite family that hold for every index, used
// to classify the tail of separation checks beyond any finite horizon.
struct FamilyStructure {
  bool containment_analytic = false;
  bool disjointness_analytic = false;
  std::string note;
};

// Countable family of maps given by a generator closure, plus the envelopes
// that make its moment series checkable. The generator must be pure: the
// same index always yields bitwise-identical parameters.
class MapFamily {
 public:
  MapFamily(std::function<MapSpec(Symbol)> generator, SeriesEnvelopes envelopes,
            FamilyStructure structure, std::string kind_name);

  MapSpec at(Symbol i) const;
  const SeriesEnvelopes& envelopes() const { return envelopes_; }
  const FamilyStructure& structure() const { return structure_; }
  const std::string& kind_name() const { return kind_name_; }

  // Parameters for serializable named families (empty for custom closures).
  std::vector<std::pair<std::string, double>> params;

 private:
  std::function<MapSpec(Symbol)> generator_;
  SeriesEnvelopes envelopes_;
  FamilyStructure structure_;
  std::string kind_name_;
};

// Slices family on [0,inf) x [0,H]: map i contracts the second axis by
// gamma_i = scale*ratio^i, expands the first by Gamma_i = gamma_i + slope*i,
// and translates to column i-1 at height sum_{k<i} gamma_k. The heights come
// from the running sum (not a closed form) so consecutive slice images share
// their boundary bitwise and the separation checks are exact.
MapFamily geometric_slices_family(double scale, double ratio, double slope,
                                  double height);

// -------------------------------------------------------------- open sets

enum class OpenSetKind { OpenBox, OpenBall };

struct OpenSetSpec {
  OpenSetKind kind = OpenSetKind::OpenBox;
  std::size_t dim = 1;
  Vec lo, hi;  // box
  Vec center;  // ball
  double radius = 0.0;

  static OpenSetSpec open_box(Vec lo, Vec hi);
  static OpenSetSpec open_ball(Vec center, double radius);

  bool contains_strict(const Vec& x) const;      // open membership
  bool closure_contains(const Vec& x, double tol) const;
  double scale() const;
};

// ------------------------------------------------------------------ system

struct ValidationIssue {
  std::string code;     // short machine-readable tag
  std::string message;  // human-readable detail
  std::int64_t map_index = -1;  // 1-based, -1 when not map-specific
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

// An iterated function system: state space, maps (finite list or countable
// family), selection probabilities, and optionally a canonical open set for
// separation checks. Treat instances as immutable after construction.
class IfsSystem {
 public:
  IfsSystem(std::string name, SpaceSpec space, std::vector<MapSpec> maps,
            ProbabilityVector probabilities);
  IfsSystem(std::string name, SpaceSpec space, MapFamily family,
            ProbabilityVector probabilities);

  const std::string& name() const { return name_; }
  const SpaceSpec& space() const { return space_; }
  const ProbabilityVector& probabilities() const { return prob_; }
  bool is_finite() const { return family_ == nullptr; }
  const MapFamily& family() const;

  // Finite systems: the map count. Families: the sampler's index limit.
  std::size_t map_count() const;

  // 1-based. For families, indices up to map_count() are served from a
  // pre-built table; larger indices are generated on demand.
  MapSpec map_spec(Symbol i) const;
  const MapSpec& sampled_map(Symbol i) const;  // table-backed, i <= map_count()

  Vec apply_map(Symbol i, const Vec& x) const;
  Vec apply_inverse_map(Symbol i, const Vec& y) const;

  std::optional<OpenSetSpec> default_open_set;
  std::string notes;  // free-form remarks surfaced in reports

 private:
  std::string name_;
  SpaceSpec space_;
  std::vector<MapSpec> maps_;  // finite list, or family table
  std::shared_ptr<const MapFamily> family_;
  ProbabilityVector prob_;
};

// Hypothesis and consistency checks; success is required before handing a
// system to the dynamics, separation, or bound routines.
ValidationReport validate(const IfsSystem& sys);

// ----------------------------------------------------------------- presets

// Built-in systems: "example1" (infinite slices family), "example2" (four
// maps on the unit disc, two radial and two affine), "cantor3", and
// "sierpinski".
IfsSystem make_preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace ifs
