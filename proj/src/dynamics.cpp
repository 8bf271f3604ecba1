#include "ifs/dynamics.hpp"

#include <atomic>
#include <cmath>
#include <cstring>

#include "ifs/parallel.hpp"

namespace ifs {

namespace {
constexpr std::uint64_t kShardSize = 1u << 16;
}

PointCloud forward_orbit(const IfsSystem& sys, const Vec& x0,
                         const OrbitParams& params) {
  const SpaceSpec& X = sys.space();
  if (x0.dim() != X.dim) throw InvalidArgument("forward_orbit: x0 dim mismatch");
  if (params.count == 0) throw InvalidArgument("forward_orbit: count must be > 0");
  const ProbabilityVector& prob = sys.probabilities();
  const double guard = params.guard_factor * std::max(1.0, X.scale());

  PointCloud cloud(X.dim);
  cloud.resize(params.count);
  std::uint64_t shards = (params.count + kShardSize - 1) / kShardSize;
  std::atomic<bool> diverged{false};

  parallel_for(shards, params.workers, [&](std::size_t s) {
    if (diverged.load(std::memory_order_relaxed)) return;
    Pcg32 rng(params.seed, s);
    Vec x = x0;
    std::uint64_t start = s * kShardSize;
    std::uint64_t len = std::min(kShardSize, params.count - start);
    for (std::uint64_t k = 0; k < params.burn_in + len; ++k) {
      Symbol i = prob.sample(rng.next_double());
      x = sys.sampled_map(i).apply(x);
      if (!(x.norm() <= guard)) {
        diverged.store(true, std::memory_order_relaxed);
        return;
      }
      if (k >= params.burn_in) {
        double* out = cloud.row(start + (k - params.burn_in));
        for (std::size_t a = 0; a < X.dim; ++a) out[a] = x[a];
      }
    }
  });
  if (diverged.load())
    throw OrbitDiverged("forward_orbit: trajectory left the guard radius");

  cloud.provenance.system_name = sys.name();
  cloud.provenance.seed = params.seed;
  cloud.provenance.burn_in = params.burn_in;
  cloud.provenance.count = params.count;
  cloud.provenance.note = "forward-orbit; shard=65536, per-shard substreams";
  return cloud;
}

CodingResult coding_map(const IfsSystem& sys, const SymbolStream& stream,
                        const Vec& x0, double eps, std::uint32_t max_depth) {
  if (x0.dim() != sys.space().dim)
    throw InvalidArgument("coding_map: x0 dim mismatch");
  if (eps <= 0.0) eps = 1e-12 * std::max(1.0, sys.space().scale());

  CodingResult res;
  Vec prev = x0;
  int streak = 0;
  for (std::uint32_t n = 1; n <= max_depth; ++n) {
    Vec y = x0;
    for (std::uint32_t k = n; k-- > 0;) y = sys.apply_map(stream.at(k), y);
    double inc = distance(y, prev);
    prev = y;
    res.point = y;
    res.depth = n;
    res.residual = inc;
    streak = (inc < eps) ? streak + 1 : 0;
    if (streak >= 10) {
      res.converged = true;
      return res;
    }
  }
  res.converged = false;
  return res;
}

Vec compose_word(const IfsSystem& sys, const SymbolWord& word, const Vec& x0) {
  Vec y = x0;
  const auto& syms = word.symbols();
  for (std::size_t k = syms.size(); k-- > 0;) y = sys.apply_map(syms[k], y);
  return y;
}

namespace {

bool word_is_affine_diagonal(const IfsSystem& sys, const SymbolWord& word) {
  for (Symbol s : word.symbols())
    if (sys.map_spec(s).kind != MapKind::AffineDiagonal) return false;
  return true;
}

}  // namespace

double cylinder_mass(const PointCloud& cloud, const IfsSystem& sys,
                     const SymbolWord& word, const OpenSetSpec& region) {
  if (word.empty()) throw InvalidArgument("cylinder_mass: empty word");
  if (cloud.size() == 0) throw InvalidArgument("cylinder_mass: empty cloud");
  if (cloud.dim() != sys.space().dim)
    throw InvalidArgument("cylinder_mass: cloud dim mismatch");
  CylinderSpec cyl{word};
  if (cyl.probability(sys.probabilities()) <
      10.0 / static_cast<double>(cloud.size()))
    throw DomainError("cylinder_mass: word too long for this cloud size");

  const std::size_t d = cloud.dim();
  const std::size_t n = cloud.size();
  const auto& syms = word.symbols();

  if (region.kind == OpenSetKind::OpenBox && word_is_affine_diagonal(sys, word)) {
    // Exact interval image of the closed box under the composition.
    Vec lo = region.lo, hi = region.hi;
    for (std::size_t k = syms.size(); k-- > 0;) {
      MapSpec m = sys.map_spec(syms[k]);
      for (std::size_t a = 0; a < d; ++a) {
        double f = m.factors[a], t = m.translate[a];
        double u = f * lo[a] + t, v = f * hi[a] + t;
        lo[a] = std::min(u, v);
        hi[a] = std::max(u, v);
      }
    }
    std::atomic<std::uint64_t> inside{0};
    std::size_t shards = (n + 65535) / 65536;
    parallel_for(shards, 0, [&](std::size_t s) {
      std::size_t start = s * 65536, end = std::min(n, start + 65536);
      std::uint64_t local = 0;
      for (std::size_t i = start; i < end; ++i) {
        const double* r = cloud.row(i);
        bool in = true;
        for (std::size_t a = 0; a < d; ++a)
          if (!(r[a] >= lo[a] && r[a] <= hi[a])) {
            in = false;
            break;
          }
        local += in;
      }
      inside.fetch_add(local);
    });
    return static_cast<double>(inside.load()) / static_cast<double>(n);
  }

  // General route: pull each point back through the inverses in word order
  // and test membership in the region's closure.
  double tol = 1e-9 * region.scale();
  std::vector<MapSpec> chain;
  chain.reserve(syms.size());
  for (Symbol s : syms) chain.push_back(sys.map_spec(s));
  std::atomic<std::uint64_t> inside{0};
  std::size_t shards = (n + 65535) / 65536;
  parallel_for(shards, 0, [&](std::size_t s) {
    std::size_t start = s * 65536, end = std::min(n, start + 65536);
    std::uint64_t local = 0;
    for (std::size_t i = start; i < end; ++i) {
      Vec z = cloud.point(i);
      bool ok = true;
      for (const MapSpec& m : chain) {
        try {
          z = m.apply_inverse(z);
        } catch (const DomainError&) {
          ok = false;
          break;
        }
      }
      local += ok && region.closure_contains(z, tol);
    }
    inside.fetch_add(local);
  });
  return static_cast<double>(inside.load()) / static_cast<double>(n);
}

}  // namespace ifs
