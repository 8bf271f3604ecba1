#include <doctest.h>

#include <ifs/dynamics.hpp>
#include <ifs/model.hpp>

#include <cmath>
#include <cstring>
#include <vector>

using ifs::IfsSystem;
using ifs::MapSpec;
using ifs::OrbitParams;
using ifs::PointCloud;
using ifs::ProbabilityVector;
using ifs::SpaceSpec;
using ifs::Symbol;
using ifs::SymbolWord;
using ifs::Vec;

namespace {

bool clouds_identical(const PointCloud& a, const PointCloud& b) {
  if (a.size() != b.size() || a.dim() != b.dim()) return false;
  return std::memcmp(a.row(0), b.row(0),
                     a.size() * a.dim() * sizeof(double)) == 0;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("orbit is bitwise reproducible across runs and worker counts") {
  IfsSystem sys = ifs::make_preset("example2");
  OrbitParams p;
  p.count = 70000;  // not a multiple of the shard size
  p.seed = 5;
  p.workers = 1;
  PointCloud a = ifs::forward_orbit(sys, Vec{0.0, 0.0}, p);
  PointCloud b = ifs::forward_orbit(sys, Vec{0.0, 0.0}, p);
  CHECK(clouds_identical(a, b));
  p.workers = 4;
  PointCloud c = ifs::forward_orbit(sys, Vec{0.0, 0.0}, p);
  CHECK(clouds_identical(a, c));
  CHECK(c.provenance.seed == 5);
  CHECK(c.provenance.count == 70000);
}

TEST_CASE("orbit stays in the state space") {
  IfsSystem ex2 = ifs::make_preset("example2");
  OrbitParams p;
  p.count = 20000;
  p.seed = 9;
  PointCloud cloud = ifs::forward_orbit(ex2, Vec{0.0, 0.0}, p);
  for (std::size_t i = 0; i < cloud.size(); ++i)
    CHECK(ex2.space().contains(cloud.point(i), 1e-9));

  IfsSystem ex1 = ifs::make_preset("example1");
  PointCloud slice = ifs::forward_orbit(ex1, Vec{0.0, 0.0}, p);
  for (std::size_t i = 0; i < slice.size(); ++i)
    CHECK(ex1.space().contains(slice.point(i), 1e-9));
}

TEST_CASE("a trajectory that blows up raises the divergence guard") {
  double inf = std::numeric_limits<double>::infinity();
  std::vector<MapSpec> maps = {MapSpec::affine_diagonal({2.0}, Vec{0.0}),
                               MapSpec::affine_diagonal({2.0}, Vec{1.0})};
  IfsSystem sys("doubling", SpaceSpec::box(Vec{-inf}, Vec{inf}), maps,
                ProbabilityVector::finite({0.5, 0.5}));
  OrbitParams p;
  p.count = 1000;
  CHECK_THROWS_AS(ifs::forward_orbit(sys, Vec{1.0}, p), ifs::OrbitDiverged);
}

TEST_CASE("coding map converges and forgets the base point") {
  IfsSystem sys = ifs::make_preset("cantor3");
  auto stream = ifs::sample_stream(sys.probabilities(), 33, 0);
  auto r0 = ifs::coding_map(sys, stream, Vec{0.0});
  auto r1 = ifs::coding_map(sys, stream, Vec{1.0});
  CHECK(r0.converged);
  CHECK(r1.converged);
  CHECK(std::abs(r0.point[0] - r1.point[0]) < 1e-10);
  CHECK(r0.point[0] >= 0.0);
  CHECK(r0.point[0] <= 1.0);
  CHECK(r0.depth >= 10);
  // a tiny depth budget cannot reach the convergence streak
  auto rshort = ifs::coding_map(sys, stream, Vec{0.0}, 0.0, 3);
  CHECK_FALSE(rshort.converged);
}

TEST_CASE("word composition contracts to the cycle fixed point") {
  IfsSystem sys = ifs::make_preset("cantor3");
  // w1 o w2 (x) = x/9 + 2/9 has fixed point 1/4
  std::vector<Symbol> syms;
  for (int k = 0; k < 30; ++k) {
    syms.push_back(1);
    syms.push_back(2);
  }
  Vec y = ifs::compose_word(sys, SymbolWord(syms), Vec{0.7});
  CHECK(y[0] == doctest::Approx(0.25).epsilon(1e-13));
  // leading symbol decides the coarse location
  Vec z = ifs::compose_word(sys, SymbolWord{2, 1, 1, 1, 1, 1}, Vec{0.5});
  CHECK(z[0] > 2.0 / 3.0 - 1e-12);
}

TEST_CASE("forward orbit and coding map sample the same law") {
  IfsSystem sys = ifs::make_preset("cantor3");
  const std::size_t n = 20000;
  OrbitParams p;
  p.count = n;
  p.seed = 12;
  PointCloud orbit = ifs::forward_orbit(sys, Vec{0.5}, p);

  const int cells = 27;
  std::vector<double> ha(cells, 0.0), hb(cells, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    int c = std::min(cells - 1, int(orbit.point(i)[0] * cells));
    ha[c] += 1.0 / n;
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto s = ifs::sample_stream(sys.probabilities(), 4242, i);
    auto r = ifs::coding_map(sys, s, Vec{0.5});
    REQUIRE(r.converged);
    int c = std::min(cells - 1, int(std::max(0.0, r.point[0]) * cells));
    hb[c] += 1.0 / n;
  }
  double tv = 0.0;
  for (int c = 0; c < cells; ++c) tv += std::abs(ha[c] - hb[c]);
  tv *= 0.5;
  CHECK(tv < 0.08);
}

TEST_CASE("cylinder mass through the exact box route matches the pullback route") {
  IfsSystem sys = ifs::make_preset("cantor3");
  OrbitParams p;
  p.count = 50000;
  p.seed = 21;
  PointCloud cloud = ifs::forward_orbit(sys, Vec{0.5}, p);
  auto box = ifs::OpenSetSpec::open_box(Vec{0.0}, Vec{1.0});
  auto ball = ifs::OpenSetSpec::open_ball(Vec{0.5}, 0.5);  // same interval
  for (SymbolWord w : {SymbolWord{1}, SymbolWord{2, 1}, SymbolWord{1, 2, 2}}) {
    double via_box = ifs::cylinder_mass(cloud, sys, w, box);
    double via_inverse = ifs::cylinder_mass(cloud, sys, w, ball);
    CHECK(via_box == doctest::Approx(via_inverse).epsilon(1e-12));
    ifs::CylinderSpec cyl{w};
    double expect = cyl.probability(sys.probabilities());
    CHECK(std::abs(via_box - expect) <
          4.0 * std::sqrt(expect * (1.0 - expect) / double(p.count)));
  }
}

TEST_CASE("cylinder mass rejects words beyond the cloud's resolution") {
  IfsSystem sys = ifs::make_preset("cantor3");
  OrbitParams p;
  p.count = 5000;
  p.seed = 3;
  PointCloud cloud = ifs::forward_orbit(sys, Vec{0.5}, p);
  auto region = ifs::OpenSetSpec::open_box(Vec{0.0}, Vec{1.0});
  std::vector<Symbol> nine(9, 1);
  CHECK_THROWS_AS(ifs::cylinder_mass(cloud, sys, SymbolWord(nine), region),
                  ifs::DomainError);
  std::vector<Symbol> eight(8, 1);
  CHECK_NOTHROW(ifs::cylinder_mass(cloud, sys, SymbolWord(eight), region));
}

TEST_CASE("slice masses approximate the selection probabilities") {
  IfsSystem sys = ifs::make_preset("example1");
  OrbitParams p;
  p.count = 30000;
  p.seed = 77;
  PointCloud cloud = ifs::forward_orbit(sys, Vec{0.0, 0.0}, p);
  REQUIRE(sys.default_open_set.has_value());
  const auto& O = *sys.default_open_set;
  double m1 = ifs::cylinder_mass(cloud, sys, SymbolWord{1}, O);
  double m11 = ifs::cylinder_mass(cloud, sys, SymbolWord{1, 1}, O);
  double m2 = ifs::cylinder_mass(cloud, sys, SymbolWord{2}, O);
  CHECK(std::abs(m1 - 0.5) < 0.02);
  CHECK(std::abs(m11 - 0.25) < 0.02);
  CHECK(std::abs(m2 - 0.25) < 0.02);
}

}
