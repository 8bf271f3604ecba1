#include <cmath>
#include <limits>

#include "ifs/errors.hpp"
#include "ifs/model.hpp"

namespace ifs {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

IfsSystem make_example1() {
  IfsSystem sys("example1", SpaceSpec::box(Vec{0.0, 0.0}, Vec{kInf, 1.0}),
                geometric_slices_family(0.5, 2.0 / 3.0, 0.1, 1.0),
                ProbabilityVector::geometric(0.5));
  sys.default_open_set = OpenSetSpec::open_box(Vec{0.0, 0.0}, Vec{kInf, 1.0});
  sys.notes =
      "countable slices family on the half-strip: map i scales the second "
      "axis by (1/2)(2/3)^i and the first by that plus i/10, with geometric "
      "selection weights 2^-i";
  return sys;
}

IfsSystem make_example2() {
  // Two radial maps that expand near their target centres but contract
  // toward the rim, plus two flat similitudes; all four send the closed unit
  // disc into itself and their open-disc images are pairwise disjoint.
  std::vector<MapSpec> maps;
  maps.push_back(MapSpec::radial(2, 1.25, -0.75, 1.0 / 3.0, Vec{-0.5, 0.0},
                                 0.25, 1.25));
  maps.push_back(MapSpec::radial(2, 1.25, -0.75, 1.0 / 3.0, Vec{0.5, 0.0},
                                 0.25, 1.25));
  maps.push_back(MapSpec::affine_diagonal({1.0 / 3.0, 1.0 / 3.0},
                                          Vec{0.0, 2.0 / 3.0}));
  maps.push_back(MapSpec::affine_diagonal({1.0 / 3.0, 1.0 / 3.0},
                                          Vec{0.0, -2.0 / 3.0}));
  IfsSystem sys("example2", SpaceSpec::ball(Vec{0.0, 0.0}, 1.0), std::move(maps),
                ProbabilityVector::finite({0.1, 0.1, 0.4, 0.4}));
  sys.default_open_set = OpenSetSpec::open_ball(Vec{0.0, 0.0}, 1.0);
  sys.notes =
      "four-term sums give entropy -1.19355, log-mean upper factor -0.83426 "
      "and log-mean lower factor -1.15615, hence dimension bounds 1.03235 "
      "and 1.43067; rounded figures of -0.74 and 1.05 sometimes quoted for "
      "this system are not consistent with those sums";
  return sys;
}

IfsSystem make_cantor3() {
  std::vector<MapSpec> maps;
  maps.push_back(MapSpec::affine_diagonal({1.0 / 3.0}, Vec{0.0}));
  maps.push_back(MapSpec::affine_diagonal({1.0 / 3.0}, Vec{2.0 / 3.0}));
  IfsSystem sys("cantor3", SpaceSpec::box(Vec{0.0}, Vec{1.0}), std::move(maps),
                ProbabilityVector::finite({0.5, 0.5}));
  sys.default_open_set = OpenSetSpec::open_box(Vec{0.0}, Vec{1.0});
  sys.notes = "middle-thirds dust; both dimension bounds equal log 2 / log 3";
  return sys;
}

IfsSystem make_sierpinski() {
  std::vector<MapSpec> maps;
  maps.push_back(MapSpec::affine_diagonal({0.5, 0.5}, Vec{0.0, 0.0}));
  maps.push_back(MapSpec::affine_diagonal({0.5, 0.5}, Vec{0.5, 0.0}));
  maps.push_back(MapSpec::affine_diagonal({0.5, 0.5}, Vec{0.0, 0.5}));
  double third = 1.0 / 3.0;
  IfsSystem sys("sierpinski", SpaceSpec::box(Vec{0.0, 0.0}, Vec{1.0, 1.0}),
                std::move(maps), ProbabilityVector::finite({third, third, third}));
  sys.default_open_set = OpenSetSpec::open_box(Vec{0.0, 0.0}, Vec{1.0, 1.0});
  sys.notes = "right-angle gasket; both dimension bounds equal log 3 / log 2";
  return sys;
}

}  // namespace

IfsSystem make_preset(const std::string& name) {
  if (name == "example1") return make_example1();
  if (name == "example2") return make_example2();
  if (name == "cantor3") return make_cantor3();
  if (name == "sierpinski") return make_sierpinski();
  throw InvalidArgument("unknown preset: " + name);
}

std::vector<std::string> preset_names() {
  return {"cantor3", "example1", "example2", "sierpinski"};
}

}  // namespace ifs
