#pragma once

#include <cstdint>

#include "ifs/cloud.hpp"
#include "ifs/model.hpp"
#include "ifs/symbolic.hpp"

namespace ifs {

struct OrbitParams {
  std::uint64_t count = 0;
  std::uint64_t burn_in = 1024;
  std::uint64_t seed = 1;
  unsigned workers = 0;        // 0 = default_thread_count()
  double guard_factor = 1e9;   // divergence guard, relative to the space scale
};

// Random forward iteration from x0. Work is split into fixed-size shards: the
// shard at index s draws from the substream (seed, s) and runs its own
// burn-in, so the output is bitwise identical for any worker count.
PointCloud forward_orbit(const IfsSystem& sys, const Vec& x0,
                         const OrbitParams& params);

struct CodingResult {
  Vec point;
  bool converged = false;
  std::uint32_t depth = 0;   // symbols consumed
  double residual = 0.0;     // last increment observed
};

// Evaluates the address map: the limit of w_{i_1} o ... o w_{i_n}(x0) along
// the stream. Convergence is declared after 10 consecutive increments below
// eps (default 1e-12 times the space scale); running out of depth yields
// converged = false rather than an error.
CodingResult coding_map(const IfsSystem& sys, const SymbolStream& stream,
                        const Vec& x0, double eps = 0.0,
                        std::uint32_t max_depth = 4096);

// Finite composition w_{i_1} o ... o w_{i_m}(x0) for a word.
Vec compose_word(const IfsSystem& sys, const SymbolWord& word, const Vec& x0);

// Fraction of cloud points lying in the image of `region` under the word's
// composition. Affine-diagonal words over box regions use the exact interval
// image; otherwise points are pulled back through the inverse maps. The word
// must be short enough that its probability is at least 10 / cloud.size().
double cylinder_mass(const PointCloud& cloud, const IfsSystem& sys,
                     const SymbolWord& word, const OpenSetSpec& region);

}  // namespace ifs
