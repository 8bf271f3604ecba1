#include <doctest.h>

#include <ifs/cloud.hpp>
#include <ifs/dynamics.hpp>
#include <ifs/estimation.hpp>
#include <ifs/model.hpp>
#include <ifs/rng.hpp>

#include <cmath>
#include <vector>

using ifs::BallIndex;
using ifs::PointCloud;
using ifs::ProfileParams;
using ifs::Vec;

namespace {

PointCloud uniform_square(std::size_t n, std::uint64_t seed) {
  PointCloud cloud(2);
  ifs::Pcg32 g(seed, 0);
  for (std::size_t i = 0; i < n; ++i)
    cloud.append(Vec{g.next_double(), g.next_double()});
  return cloud;
}

std::size_t brute_count(const PointCloud& cloud, const Vec& x, double r) {
  std::size_t c = 0;
  const double r2 = r * r;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double* p = cloud.row(i);
    double s = 0.0;
    for (std::size_t a = 0; a < cloud.dim(); ++a) {
      double d = p[a] - x[a];
      s += d * d;
    }
    c += (s <= r2);
  }
  return c;
}

}  // namespace

TEST_SUITE("estimation") {

TEST_CASE("grid counts equal the exhaustive scan exactly") {
  // mixed cloud: bulk uniform plus a tight cluster to stress cell skew
  PointCloud cloud = uniform_square(10000, 8);
  ifs::Pcg32 g(99, 2);
  for (int i = 0; i < 500; ++i)
    cloud.append(Vec{0.31 + 1e-4 * g.next_double(), 0.77 + 1e-4 * g.next_double()});
  BallIndex index(cloud);
  for (int q = 0; q < 100; ++q) {
    Vec x{g.next_double() * 1.4 - 0.2, g.next_double() * 1.4 - 0.2};
    double r = std::pow(2.0, -1.0 - 6.0 * g.next_double());
    CAPTURE(x[0]);
    CAPTURE(x[1]);
    CAPTURE(r);
    CHECK(index.count_within(x, r) == brute_count(cloud, x, r));
  }
  // radii at and around an exact interpoint distance
  Vec first = cloud.point(0);
  Vec second = cloud.point(1);
  double d = ifs::distance(first, second);
  for (double r : {d, std::nextafter(d, 0.0), std::nextafter(d, 1e9)})
    CHECK(index.count_within(first, r) == brute_count(cloud, first, r));
}

TEST_CASE("degenerate one-point cloud falls back to brute force") {
  PointCloud cloud(2);
  for (int i = 0; i < 20; ++i) cloud.append(Vec{0.5, 0.5});
  BallIndex index(cloud);
  CHECK(index.count_within(Vec{0.5, 0.5}, 0.0) == 20);
  CHECK(index.count_within(Vec{0.6, 0.5}, 0.05) == 0);
}

TEST_CASE("radii ladder is dyadic and descending") {
  auto radii = ifs::radii_ladder(1.0, 10);
  REQUIRE(radii.size() == 11);
  for (std::size_t k = 0; k < radii.size(); ++k)
    CHECK(radii[k] == std::ldexp(1.0, -int(k)));
  CHECK_THROWS_AS(ifs::radii_ladder(0.0, 5), ifs::InvalidArgument);
}

TEST_CASE("local slope of a uniform square is near two") {
  PointCloud cloud = uniform_square(40000, 51);
  BallIndex index(cloud);
  auto radii = ifs::radii_ladder(0.2, 12);
  auto est = ifs::local_dimension(index, Vec{0.5, 0.5}, radii);
  CHECK(est.slope == doctest::Approx(2.0).epsilon(0.15));
  CHECK(est.radii_used >= 3);
  CHECK(est.r_largest == 0.2);
}

TEST_CASE("too little data raises InsufficientData") {
  PointCloud cloud = uniform_square(200, 4);
  BallIndex index(cloud);
  auto radii = ifs::radii_ladder(0.02, 10);  // ~0.25 points expected inside r0
  CHECK_THROWS_AS(ifs::local_dimension(index, Vec{0.5, 0.5}, radii, 50),
                  ifs::InsufficientData);
}

TEST_CASE("profile of the uniform square concentrates near two") {
  PointCloud cloud = uniform_square(60000, 77);
  ProfileParams params;
  params.n_centers = 100;
  params.seed = 19;
  auto prof = ifs::dimension_profile(cloud, params,
                                     std::make_pair(1.7, 2.3));
  CHECK(prof.q50 == doctest::Approx(2.0).epsilon(0.1));
  CHECK(prof.q10 > 1.4);
  CHECK(prof.q90 < 2.6);
  CHECK(prof.coverage > 0.6);
  CHECK(prof.band_lo == 1.7);
  CHECK(prof.r0 == doctest::Approx(std::sqrt(2.0) / 8.0).epsilon(0.1));
}

TEST_CASE("profile is reproducible and worker-count independent") {
  PointCloud cloud = uniform_square(30000, 5);
  ProfileParams params;
  params.n_centers = 60;
  params.seed = 23;
  params.workers = 1;
  auto a = ifs::dimension_profile(cloud, params);
  params.workers = 4;
  auto b = ifs::dimension_profile(cloud, params);
  REQUIRE(a.center_ids.size() == b.center_ids.size());
  for (std::size_t k = 0; k < a.center_ids.size(); ++k) {
    CHECK(a.center_ids[k] == b.center_ids[k]);
    CHECK(a.slopes[k].slope == b.slopes[k].slope);
  }
  CHECK(a.q50 == b.q50);
}

TEST_CASE("edge exclusion drops boundary centers and tightens the estimate") {
  PointCloud cloud = uniform_square(60000, 31);
  ProfileParams params;
  params.n_centers = 80;
  params.seed = 11;
  params.edge_exclusion = true;
  auto prof = ifs::dimension_profile(cloud, params);
  CHECK(prof.excluded_edge > 0);
  auto [lo, hi] = cloud.bbox();
  for (std::uint32_t id : prof.center_ids) {
    const double* p = cloud.row(id);
    for (std::size_t a = 0; a < 2; ++a) {
      CHECK(p[a] - prof.r0 >= lo[a]);
      CHECK(p[a] + prof.r0 <= hi[a]);
    }
  }
  CHECK(prof.q50 == doctest::Approx(2.0).epsilon(0.06));
}

TEST_CASE("sierpinski orbit slope lands near the similarity dimension") {
  auto sys = ifs::make_preset("sierpinski");
  ifs::OrbitParams op;
  op.count = 200000;
  op.seed = 2;
  auto cloud = ifs::forward_orbit(sys, Vec{0.25, 0.25}, op);
  ProfileParams params;
  params.n_centers = 60;
  params.seed = 3;
  auto prof = ifs::dimension_profile(cloud, params);
  // log 3 / log 2 = 1.585; modest cloud, generous window
  CHECK(prof.q50 > 1.40);
  CHECK(prof.q50 < 1.75);
}

TEST_CASE("edge exclusion on an anisotropic cloud still finds centers") {
  // x-extent 12, y-extent 1: a diag/8 window would disqualify every center,
  // so the defaulted radius must shrink to the thin axis
  PointCloud cloud(2);
  ifs::Pcg32 g(64, 0);
  for (int i = 0; i < 40000; ++i)
    cloud.append(Vec{12.0 * g.next_double(), g.next_double()});
  ProfileParams params;
  params.n_centers = 50;
  params.edge_exclusion = true;
  auto prof = ifs::dimension_profile(cloud, params);
  CHECK(prof.r0 <= 1.0 / 3.0 + 1e-12);
  CHECK(prof.slopes.size() == 50);
  CHECK(prof.q50 == doctest::Approx(2.0).epsilon(0.15));
  // an explicit radius is honored even when it starves the rule
  params.r0 = 3.0;
  CHECK_THROWS_AS(ifs::dimension_profile(cloud, params), ifs::InsufficientData);
}

TEST_CASE("a profile with every center starved reports InsufficientData") {
  PointCloud cloud = uniform_square(50, 1);
  ProfileParams params;
  params.n_centers = 10;
  params.min_count = 100;  // more than the whole cloud
  CHECK_THROWS_AS(ifs::dimension_profile(cloud, params), ifs::InsufficientData);
}

}
