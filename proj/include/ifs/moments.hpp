#pragma once

#include <cstdint>
#include <string>

#include "ifs/model.hpp"
#include "ifs/numerics.hpp"
#include "ifs/vec.hpp"

namespace ifs {

// The five selection-averaged series of a system, each with a rigorous
// truncation radius (zero for finite systems, an envelope tail bound for
// families).
struct MomentReport {
  Enclosure mean_expansion;     // sum p_i Gamma_i
  Enclosure mean_displacement;  // sum p_i |w_i(x0) - x0|
  Enclosure lyapunov_upper;     // sum p_i log Gamma_i
  Enclosure lyapunov_lower;     // sum p_i log gamma_i
  Enclosure entropy;            // sum p_i log p_i
  Vec x0;
  std::uint64_t terms_used = 0;
};

// Hypothesis flags derived from the sums. The first five gate the dimension
// bounds; lyapunov_lower_negative is additionally required for the lower
// bound quotient to make sense.
struct MembershipFlags {
  bool mean_expansion_finite = false;
  bool mean_displacement_finite = false;
  bool lyapunov_upper_negative = false;  // finite and < 0 (whole enclosure)
  bool entropy_finite = false;
  bool lyapunov_lower_finite = false;
  bool lyapunov_lower_negative = false;

  bool admissible() const {
    return mean_expansion_finite && mean_displacement_finite &&
           lyapunov_upper_negative && entropy_finite && lyapunov_lower_finite;
  }
};

struct BoundsReport {
  Enclosure dim_lower;  // entropy / lyapunov_lower
  Enclosure dim_upper;  // entropy / lyapunov_upper
  MembershipFlags flags;
  MomentReport moments;
  std::string notes;
};

// Evaluates the five series at base point x0. Finite systems are summed in
// ascending term order with compensation, so the result is independent of
// map ordering; families are summed until every envelope tail bound drops
// below tol. Throws DivergentSeries when a family term escapes its envelope
// or the tolerance is unreachable.
MomentReport moment_sums(const IfsSystem& sys, const Vec& x0, double tol = 1e-9);

// Same with the default base point: the origin when it lies in the space,
// otherwise the space's reference point.
MomentReport moment_sums(const IfsSystem& sys, double tol = 1e-9);

MembershipFlags check_membership(const MomentReport& m);

// Dimension bounds with propagated radii at most tol on each quotient
// (series tolerances are tightened internally as needed). Throws
// HypothesisViolated naming the first failed flag.
BoundsReport dimension_bounds(const IfsSystem& sys, double tol = 1e-9);

Vec default_base_point(const IfsSystem& sys);

}  // namespace ifs
