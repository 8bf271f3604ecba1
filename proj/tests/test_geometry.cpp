#include <doctest.h>

#include <ifs/dynamics.hpp>
#include <ifs/model.hpp>
#include <ifs/open_set.hpp>

#include <cmath>
#include <vector>

using ifs::IfsSystem;
using ifs::MapSpec;
using ifs::OpenSetSpec;
using ifs::ProbabilityVector;
using ifs::SpaceSpec;
using ifs::Symbol;
using ifs::Vec;

TEST_SUITE("open_set") {

TEST_CASE("slices family separates on its open box") {
  IfsSystem sys = ifs::make_preset("example1");
  REQUIRE(sys.default_open_set.has_value());
  auto rep = ifs::check_osc(sys, *sys.default_open_set, 50);
  CHECK(rep.ok());
  CHECK(rep.horizon == 50);
  CHECK(rep.tail == "analytic");
  CHECK(rep.containment.size() == 50);
  CHECK(rep.pairs.size() == 50 * 49 / 2);
  for (const auto& c : rep.containment) {
    CHECK(c.contained);
    CHECK(c.method == "box");
  }
  for (const auto& pr : rep.pairs) CHECK(pr.disjoint);
}

TEST_CASE("four-map system separates on the unit disc") {
  IfsSystem sys = ifs::make_preset("example2");
  REQUIRE(sys.default_open_set.has_value());
  auto rep = ifs::check_osc(sys, *sys.default_open_set);
  CHECK(rep.ok());
  CHECK(rep.tail == "complete");
  CHECK(rep.containment.size() == 4);
  CHECK(rep.pairs.size() == 6);
  // every image is a ball here, so each decision is exact
  for (const auto& c : rep.containment) CHECK(c.method == "ball");
  for (const auto& pr : rep.pairs) {
    CAPTURE(pr.i);
    CAPTURE(pr.j);
    CHECK(pr.disjoint);
    CHECK(pr.method == "ball");
  }
}

TEST_CASE("classical presets separate") {
  for (const char* name : {"cantor3", "sierpinski"}) {
    IfsSystem sys = ifs::make_preset(name);
    REQUIRE(sys.default_open_set.has_value());
    auto rep = ifs::check_osc(sys, *sys.default_open_set);
    CAPTURE(name);
    CHECK(rep.ok());
    CHECK(rep.tail == "complete");
  }
}

TEST_CASE("identical maps fail disjointness but not containment") {
  std::vector<MapSpec> maps = {MapSpec::affine_diagonal({0.5}, Vec{0.0}),
                               MapSpec::affine_diagonal({0.5}, Vec{0.0})};
  IfsSystem sys("twins", SpaceSpec::box(Vec{0.0}, Vec{1.0}), maps,
                ProbabilityVector::finite({0.5, 0.5}));
  auto rep = ifs::check_osc(sys, OpenSetSpec::open_box(Vec{0.0}, Vec{1.0}));
  CHECK_FALSE(rep.ok());
  CHECK(rep.all_contained);
  CHECK_FALSE(rep.all_disjoint);
  REQUIRE(rep.pairs.size() == 1);
  CHECK_FALSE(rep.pairs[0].disjoint);
}

TEST_CASE("partially overlapping images are detected") {
  std::vector<MapSpec> maps = {MapSpec::affine_diagonal({0.5}, Vec{0.0}),
                               MapSpec::affine_diagonal({0.5}, Vec{0.25})};
  IfsSystem sys("overlap", SpaceSpec::box(Vec{0.0}, Vec{1.0}), maps,
                ProbabilityVector::finite({0.5, 0.5}));
  auto rep = ifs::check_osc(sys, OpenSetSpec::open_box(Vec{0.0}, Vec{1.0}));
  CHECK_FALSE(rep.all_disjoint);
}

TEST_CASE("touching open images still count as disjoint") {
  IfsSystem sys = ifs::make_preset("cantor3");
  // images (0,1/3) and (2/3,1) under the open unit interval
  auto rep = ifs::check_osc(sys, OpenSetSpec::open_box(Vec{0.0}, Vec{1.0}));
  CHECK(rep.ok());
  // and the hard case: abutting halves touching at one point
  std::vector<MapSpec> maps = {MapSpec::affine_diagonal({0.5}, Vec{0.0}),
                               MapSpec::affine_diagonal({0.5}, Vec{0.5})};
  IfsSystem halves("halves", SpaceSpec::box(Vec{0.0}, Vec{1.0}), maps,
                   ProbabilityVector::finite({0.5, 0.5}));
  auto rep2 = ifs::check_osc(halves, OpenSetSpec::open_box(Vec{0.0}, Vec{1.0}));
  CHECK(rep2.ok());
}

TEST_CASE("a map that escapes the open set fails containment") {
  std::vector<MapSpec> maps = {MapSpec::affine_diagonal({0.5}, Vec{0.0}),
                               MapSpec::affine_diagonal({0.5}, Vec{0.6})};
  IfsSystem sys("escape", SpaceSpec::box(Vec{0.0}, Vec{2.0}), maps,
                ProbabilityVector::finite({0.5, 0.5}));
  auto rep = ifs::check_osc(sys, OpenSetSpec::open_box(Vec{0.0}, Vec{1.0}));
  CHECK_FALSE(rep.all_contained);
  CHECK(rep.containment[0].contained);
  CHECK_FALSE(rep.containment[1].contained);
}

TEST_CASE("growing the family horizon never flips earlier verdicts") {
  IfsSystem sys = ifs::make_preset("example1");
  auto small = ifs::check_osc(sys, *sys.default_open_set, 10);
  auto large = ifs::check_osc(sys, *sys.default_open_set, 25);
  CHECK(small.ok());
  CHECK(large.ok());
  for (std::size_t k = 0; k < small.containment.size(); ++k) {
    CHECK(large.containment[k].index == small.containment[k].index);
    CHECK(large.containment[k].contained == small.containment[k].contained);
  }
  for (const auto& ps : small.pairs) {
    bool found = false;
    for (const auto& pl : large.pairs)
      if (pl.i == ps.i && pl.j == ps.j) {
        found = true;
        CHECK(pl.disjoint == ps.disjoint);
      }
    CHECK(found);
  }
}

TEST_CASE("general affine maps fall back to the sampled route") {
  double c = 0.3 * std::cos(0.7853981633974483);
  double s = 0.3 * std::sin(0.7853981633974483);
  std::vector<MapSpec> maps = {
      MapSpec::affine_general(2, {c, -s, s, c}, Vec{0.35, 0.35}, 0.3, 0.3),
      MapSpec::affine_diagonal({0.25, 0.25}, Vec{0.7, 0.7}),
  };
  IfsSystem sys("rotated", SpaceSpec::box(Vec{0.0, 0.0}, Vec{1.0, 1.0}), maps,
                ProbabilityVector::finite({0.5, 0.5}));
  auto rep = ifs::check_osc(sys, OpenSetSpec::open_box(Vec{0.0, 0.0}, Vec{1.0, 1.0}));
  CHECK(rep.all_contained);
  CHECK(rep.containment[0].method == "sampled");
  CHECK(rep.containment[1].method == "box");
}

TEST_CASE("slice image boxes agree with an independent layout oracle") {
  IfsSystem sys = ifs::make_preset("example1");
  // recompute the slice bands directly and confirm the pairwise verdicts
  double g = 0.5, cum = 0.0;
  std::vector<std::pair<double, double>> bands;
  for (Symbol i = 1; i <= 12; ++i) {
    g *= 2.0 / 3.0;
    bands.push_back({cum, cum + g});
    cum += g;
  }
  auto rep = ifs::check_osc(sys, *sys.default_open_set, 12);
  for (const auto& pr : rep.pairs) {
    const auto& a = bands[pr.i - 1];
    const auto& b = bands[pr.j - 1];
    bool oracle = a.second <= b.first || b.second <= a.first;
    CHECK(pr.disjoint == oracle);
  }
}

TEST_CASE("support mass of a cloud inside and outside a set") {
  IfsSystem sys = ifs::make_preset("example2");
  ifs::OrbitParams p;
  p.count = 20000;
  p.seed = 13;
  auto cloud = ifs::forward_orbit(sys, Vec{0.0, 0.0}, p);
  auto in = ifs::support_mass(cloud, *sys.default_open_set);
  CHECK(in.total == 20000);
  CHECK(in.fraction > 0.99);
  CHECK(in.positive);
  CHECK(in.ci_lo <= in.fraction);
  CHECK(in.ci_hi >= in.fraction);
  auto out = ifs::support_mass(cloud, OpenSetSpec::open_ball(Vec{50.0, 50.0}, 1.0));
  CHECK(out.fraction == 0.0);
  CHECK_FALSE(out.positive);
}

}
