#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ifs/cloud.hpp"
#include "ifs/model.hpp"

namespace ifs {

struct OscPerMap {
  Symbol index = 0;
  bool contained = false;
  std::string method;  // "box", "ball", "box-in-ball", "ball-in-box", "sampled"
};

struct OscPerPair {
  Symbol i = 0, j = 0;
  bool disjoint = false;
  std::string method;  // "box", "ball", "box-ball", "sampled-inverse"
};

struct OscReport {
  std::vector<OscPerMap> containment;
  std::vector<OscPerPair> pairs;
  bool all_contained = false;
  bool all_disjoint = false;
  Symbol horizon = 0;      // largest index checked individually
  std::string tail;        // "complete" | "analytic" | "horizon"
  std::string tail_note;
  bool ok() const { return all_contained && all_disjoint; }
};

// Checks w_i(O) subset of O for each map and pairwise disjointness of the
// open images. Box images of boxes under diagonal maps and ball images of
// origin-centred balls under similitudes or radial maps are compared
// exactly (1e-9-of-scale slack on ball arithmetic); other combinations fall
// back to dense boundary/interior sampling, and the method string records
// which route decided each flag. Enlarging the horizon of an infinite
// family never changes a flag already reported, it only appends entries.
OscReport check_osc(const IfsSystem& sys, const OpenSetSpec& O,
                    Symbol horizon = 50);

struct MassCheck {
  double fraction = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;  // 3-sigma binomial band
  bool positive = false;
  std::uint64_t inside = 0, total = 0;
};

// Empirical mass the cloud assigns to the open set (strict membership).
MassCheck support_mass(const PointCloud& cloud, const OpenSetSpec& O);

}  // namespace ifs
