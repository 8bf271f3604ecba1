// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion carries its runtime budget where one applies.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <ifs/dynamics.hpp>
#include <ifs/estimation.hpp>
#include <ifs/model.hpp>
#include <ifs/moments.hpp>
#include <ifs/open_set.hpp>
#include <ifs/rng.hpp>
#include <ifs/symbolic.hpp>

namespace fs = std::filesystem;
using ifs::Vec;

namespace {

std::string g_detail;

void note(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, ap);
  va_end(ap);
  if (!g_detail.empty()) g_detail += "; ";
  g_detail += buf;
}

bool within(double x, double target, double tol, const char* what) {
  bool ok = std::isfinite(x) && std::abs(x - target) <= tol;
  note("%s=%.6f (want %.4g+/-%.4g)%s", what, x, target, tol, ok ? "" : " OUT");
  return ok;
}

bool in_range(double x, double lo, double hi, const char* what) {
  bool ok = std::isfinite(x) && x >= lo && x <= hi;
  note("%s=%.6f (want [%.4g, %.4g])%s", what, x, lo, hi, ok ? "" : " OUT");
  return ok;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ------------------------------------------------------------- criteria

bool c1_slices_moments() {
  auto m = ifs::moment_sums(ifs::make_preset("example1"), 1e-9);
  bool ok = within(m.entropy.value, -1.386, 0.002, "entropy");
  ok &= within(m.mean_expansion.value, 0.450, 0.002, "mean_expansion");
  ok &= within(m.lyapunov_upper.value, -0.805, 0.002, "lyapunov_upper");
  ok &= within(m.mean_displacement.value, 1.03, 0.01, "mean_displacement");
  return ok;
}

bool c2_slices_bounds() {
  auto rep = ifs::dimension_bounds(ifs::make_preset("example1"), 1e-9);
  bool ok = in_range(rep.dim_lower.value, 0.9212, 0.9222, "dim_lower");
  ok &= in_range(rep.dim_upper.value, 1.716, 1.727, "dim_upper");
  return ok;
}

bool c3_fourmap_bounds() {
  auto rep = ifs::dimension_bounds(ifs::make_preset("example2"), 1e-9);
  bool ok = within(rep.dim_upper.value, 1.431, 0.005, "dim_upper");
  ok &= within(rep.dim_lower.value, 1.032, 0.005, "dim_lower");
  bool noted = rep.notes.find("1.05") != std::string::npos;
  if (!noted) note("report note on the quoted 1.05 figure missing");
  return ok && noted;
}

bool c4_open_set_checks() {
  auto ex1 = ifs::make_preset("example1");
  auto r1 = ifs::check_osc(ex1, *ex1.default_open_set, 50);
  note("slices: containment %s, disjointness %s", r1.all_contained ? "ok" : "FAIL",
       r1.all_disjoint ? "ok" : "FAIL");
  auto ex2 = ifs::make_preset("example2");
  auto r2 = ifs::check_osc(ex2, *ex2.default_open_set);
  note("four-map: containment %s, disjointness %s", r2.all_contained ? "ok" : "FAIL",
       r2.all_disjoint ? "ok" : "FAIL");

  std::vector<ifs::MapSpec> twins = {
      ifs::MapSpec::affine_diagonal({0.5}, Vec{0.0}),
      ifs::MapSpec::affine_diagonal({0.5}, Vec{0.0})};
  ifs::IfsSystem twin_sys("twins", ifs::SpaceSpec::box(Vec{0.0}, Vec{1.0}),
                          twins, ifs::ProbabilityVector::finite({0.5, 0.5}));
  auto r3 = ifs::check_osc(twin_sys, ifs::OpenSetSpec::open_box(Vec{0.0}, Vec{1.0}));
  note("identical maps rejected: %s", !r3.all_disjoint ? "yes" : "NO");
  return r1.ok() && r2.ok() && !r3.all_disjoint;
}

bool c5_ergodic_averages() {
  auto sys = ifs::make_preset("example1");
  const auto& p = sys.probabilities();
  auto stream = ifs::sample_stream(p, 42);
  const std::size_t n = 100000;
  bool ok = true;
  for (const ifs::SymbolWord& pattern :
       {ifs::SymbolWord{1}, ifs::SymbolWord{1, 2}}) {
    ifs::SymbolWord w = stream.prefix(n + pattern.length() - 1);
    double freq =
        double(ifs::occupation_count(w, pattern, n)) / double(n);
    double mass = ifs::CylinderSpec{pattern}.probability(p);
    double sigma = std::sqrt(mass * (1.0 - mass) / double(n));
    char what[32];
    std::snprintf(what, sizeof(what), "freq(len %zu)", pattern.length());
    ok &= within(freq, mass, 3.0 * sigma, what);
  }
  std::size_t t999 = ifs::hitting_time(stream, ifs::SymbolWord{1}, 999);
  std::size_t t1000 = ifs::hitting_time(stream, ifs::SymbolWord{1}, 1000);
  double ratio = double(t1000) / double(t999);
  ok &= within(ratio, 1.0, 0.05, "hitting ratio");
  return ok;
}

bool c6_cylinder_masses() {
  auto sys = ifs::make_preset("example1");
  ifs::OrbitParams op;
  op.count = 100000;
  op.seed = 1;
  auto cloud = ifs::forward_orbit(sys, Vec{0.0, 0.0}, op);
  const auto& O = *sys.default_open_set;
  double m1 = ifs::cylinder_mass(cloud, sys, ifs::SymbolWord{1}, O);
  double m11 = ifs::cylinder_mass(cloud, sys, ifs::SymbolWord{1, 1}, O);
  bool ok = within(m1, 0.5, 0.016, "mass(1)");
  ok &= within(m11, 0.25, 0.014, "mass(1,1)");
  return ok;
}

bool c7_estimator_oracle() {
  auto sys = ifs::make_preset("sierpinski");
  ifs::OrbitParams op;
  op.count = 1000000;
  op.seed = 1;
  auto cloud = ifs::forward_orbit(sys, Vec{0.25, 0.25}, op);
  ifs::ProfileParams pp;
  pp.n_centers = 200;
  auto prof = ifs::dimension_profile(cloud, pp);
  return in_range(prof.q50, 1.48, 1.68, "median slope");
}

bool c8_fourmap_band() {
  auto sys = ifs::make_preset("example2");
  ifs::OrbitParams op;
  op.count = 1000000;
  op.seed = 1;
  auto cloud = ifs::forward_orbit(sys, Vec{0.0, 0.0}, op);
  ifs::ProfileParams pp;
  pp.n_centers = 200;
  auto prof = ifs::dimension_profile(cloud, pp);
  return in_range(prof.q50, 0.93, 1.53, "median slope");
}

bool c9_simulate_determinism() {
  const char* bin = std::getenv("IFSTOOL_BIN");
  if (!bin) {
    note("IFSTOOL_BIN not set");
    return false;
  }
  fs::path dir = fs::temp_directory_path() / "ifs_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::path a = dir / "a.csv", b = dir / "b.csv", c = dir / "c.csv";
  fs::path log = dir / "log.txt";
  auto simulate = [&](const fs::path& out, int threads) {
    std::string cmd = std::string(bin) +
                      " simulate --preset example2 -n 200000 --seed 11 --threads " +
                      std::to_string(threads) + " -o " + out.string() + " >> " +
                      log.string() + " 2>&1";
    int st = std::system(cmd.c_str());
    return st != -1 && WEXITSTATUS(st) == 0;
  };
  if (!simulate(a, 1) || !simulate(b, 8) || !simulate(c, 1)) {
    note("simulate run failed");
    return false;
  }
  std::string sa = slurp(a), sb = slurp(b), sc = slurp(c);
  bool ok = !sa.empty() && sa == sb && sa == sc;
  note("csv bytes: run/run %s, threads 1/8 %s", sa == sc ? "identical" : "DIFFER",
       sa == sb ? "identical" : "DIFFER");
  return ok;
}

bool c10_neighbor_count_oracle() {
  ifs::PointCloud cloud(2);
  ifs::Pcg32 g(123, 0);
  for (int i = 0; i < 10000; ++i)
    cloud.append(Vec{g.next_double(), g.next_double()});
  ifs::BallIndex index(cloud);
  std::size_t mismatches = 0;
  for (int q = 0; q < 100; ++q) {
    Vec x{g.next_double() * 1.2 - 0.1, g.next_double() * 1.2 - 0.1};
    double r = std::pow(2.0, -1.0 - 5.0 * g.next_double());
    const double r2 = r * r;
    std::size_t brute = 0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const double* pt = cloud.row(i);
      double dx = pt[0] - x[0], dy = pt[1] - x[1];
      brute += (dx * dx + dy * dy <= r2);
    }
    mismatches += (index.count_within(x, r) != brute);
  }
  note("%zu/100 queries mismatched", mismatches);
  return mismatches == 0;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0 = no runtime budget
    std::function<bool()> body;
  };
  const Criterion criteria[] = {
      {1, "slices moment sums", 1.0, c1_slices_moments},
      {2, "slices dimension bounds", 1.0, c2_slices_bounds},
      {3, "four-map dimension bounds", 1.0, c3_fourmap_bounds},
      {4, "open-set separation", 10.0, c4_open_set_checks},
      {5, "ergodic averages", 5.0, c5_ergodic_averages},
      {6, "cylinder masses", 10.0, c6_cylinder_masses},
      {7, "estimator oracle (gasket)", 60.0, c7_estimator_oracle},
      {8, "four-map local dimension band", 60.0, c8_fourmap_band},
      {9, "simulate determinism", 0.0, c9_simulate_determinism},
      {10, "neighbor-count oracle", 0.0, c10_neighbor_count_oracle},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    g_detail.clear();
    bool ok = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
      ok = c.body();
    } catch (const std::exception& e) {
      note("exception: %s", e.what());
      ok = false;
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (c.budget_s > 0.0 && secs >= c.budget_s) {
      note("runtime %.2fs exceeds %.0fs budget", secs, c.budget_s);
      ok = false;
    }
    failed += !ok;
    std::printf("%s  criterion %2d: %-30s (%6.2f s)  %s\n", ok ? "PASS" : "FAIL",
                c.id, c.name, secs, g_detail.c_str());
  }
  std::printf("%d/10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
