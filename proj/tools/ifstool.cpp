#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ifs/csvio.hpp"
#include "ifs/dynamics.hpp"
#include "ifs/errors.hpp"
#include "ifs/estimation.hpp"
#include "ifs/manifest.hpp"
#include "ifs/model.hpp"
#include "ifs/moments.hpp"
#include "ifs/open_set.hpp"
#include "ifs/parallel.hpp"
#include "ifs/svg.hpp"

using nlohmann::json;

namespace {

// ----------------------------------------------------------- config parsing

double number_or_inf(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw ifs::InvalidArgument(std::string("config: expected number or \"inf\" for ") +
                             what);
}

ifs::Vec vec_from(const json& j, const char* what) {
  if (!j.is_array() || j.empty() || j.size() > ifs::kMaxDim)
    throw ifs::InvalidArgument(std::string("config: bad vector for ") + what);
  ifs::Vec v(j.size());
  for (std::size_t a = 0; a < j.size(); ++a) v[a] = number_or_inf(j[a], what);
  return v;
}

ifs::SpaceSpec parse_space(const json& j) {
  std::string kind = j.value("kind", "");
  if (kind == "box") return ifs::SpaceSpec::box(vec_from(j.at("lo"), "space.lo"),
                                                vec_from(j.at("hi"), "space.hi"));
  if (kind == "ball")
    return ifs::SpaceSpec::ball(vec_from(j.at("center"), "space.center"),
                                j.at("radius").get<double>());
  throw ifs::InvalidArgument("config: space.kind must be \"box\" or \"ball\"");
}

ifs::MapSpec parse_map(const json& j) {
  std::string kind = j.value("kind", "");
  if (kind == "affine-diagonal")
    return ifs::MapSpec::affine_diagonal(j.at("factors").get<std::vector<double>>(),
                                         vec_from(j.at("translate"), "translate"));
  if (kind == "affine-general") {
    std::vector<double> flat;
    const json& m = j.at("matrix");
    for (const auto& row : m) {
      if (row.is_array())
        for (const auto& x : row) flat.push_back(x.get<double>());
      else
        flat.push_back(row.get<double>());
    }
    ifs::Vec t = vec_from(j.at("translate"), "translate");
    return ifs::MapSpec::affine_general(t.dim(), std::move(flat), t,
                                        j.at("lower").get<double>(),
                                        j.at("upper").get<double>());
  }
  if (kind == "radial") {
    ifs::Vec t = vec_from(j.at("translate"), "translate");
    return ifs::MapSpec::radial(t.dim(), j.at("alpha").get<double>(),
                                j.at("beta").get<double>(),
                                j.at("kappa").get<double>(), t,
                                j.at("lower").get<double>(),
                                j.at("upper").get<double>());
  }
  throw ifs::InvalidArgument("config: unknown map kind: " + kind);
}

ifs::ProbabilityVector parse_probabilities(const json& j) {
  if (j.is_array()) return ifs::ProbabilityVector::finite(j.get<std::vector<double>>());
  if (j.is_object() && j.value("kind", "") == "geometric")
    return ifs::ProbabilityVector::geometric(j.at("ratio").get<double>());
  throw ifs::InvalidArgument(
      "config: probabilities must be an array or {\"kind\":\"geometric\",...}");
}

ifs::OpenSetSpec parse_open_set(const json& j) {
  std::string kind = j.value("kind", "");
  if (kind == "open-box")
    return ifs::OpenSetSpec::open_box(vec_from(j.at("lo"), "open_set.lo"),
                                      vec_from(j.at("hi"), "open_set.hi"));
  if (kind == "open-ball")
    return ifs::OpenSetSpec::open_ball(vec_from(j.at("center"), "open_set.center"),
                                       j.at("radius").get<double>());
  throw ifs::InvalidArgument("config: open_set.kind must be \"open-box\" or \"open-ball\"");
}

ifs::IfsSystem parse_system(const json& doc) {
  std::string name = doc.value("name", "custom");
  ifs::SpaceSpec space = parse_space(doc.at("space"));
  ifs::ProbabilityVector prob = parse_probabilities(doc.at("probabilities"));

  std::optional<ifs::IfsSystem> sys;
  if (doc.contains("family")) {
    const json& f = doc.at("family");
    if (f.value("kind", "") != "geometric-slices")
      throw ifs::InvalidArgument("config: unknown family kind");
    sys.emplace(name, space,
                ifs::geometric_slices_family(
                    f.at("scale").get<double>(), f.at("ratio").get<double>(),
                    f.at("slope").get<double>(), f.at("height").get<double>()),
                std::move(prob));
  } else if (doc.contains("maps")) {
    std::vector<ifs::MapSpec> maps;
    for (const auto& m : doc.at("maps")) maps.push_back(parse_map(m));
    sys.emplace(name, space, std::move(maps), std::move(prob));
  } else {
    throw ifs::InvalidArgument("config: need either \"maps\" or \"family\"");
  }
  if (doc.contains("open_set")) sys->default_open_set = parse_open_set(doc.at("open_set"));
  if (doc.contains("notes")) sys->notes = doc.at("notes").get<std::string>();
  return std::move(*sys);
}

ifs::IfsSystem load_system(const json& params) {
  std::string preset = params.value("preset", "");
  std::string config = params.value("config", "");
  if (!preset.empty() && !config.empty())
    throw ifs::InvalidArgument("give either a preset or a config file, not both");
  if (!preset.empty()) return ifs::make_preset(preset);
  if (config.empty())
    throw ifs::InvalidArgument("a system is required: --preset NAME or --config FILE");
  std::ifstream in(config, std::ios::binary);
  if (!in) throw ifs::IoError("cannot open config: " + config);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ifs::IoError("bad config " + config + ": " + e.what());
  }
  return parse_system(doc);
}

std::string system_source(const json& params) {
  std::string preset = params.value("preset", "");
  return preset.empty() ? params.value("config", "") : "preset:" + preset;
}

// ------------------------------------------------------------- json helpers

json enclosure_json(const ifs::Enclosure& e) {
  if (!e.finite) return {{"finite", false}, {"sign", e.sign}};
  return {{"finite", true}, {"value", e.value}, {"radius", e.radius},
          {"lo", e.lo()}, {"hi", e.hi()}};
}

void emit(const json& j, bool as_json, const std::string& text) {
  if (as_json)
    std::printf("%s\n", j.dump(2).c_str());
  else
    std::fputs(text.c_str(), stdout);
}

void write_report(const json& params, const json& report,
                  const std::string& command) {
  std::string out = params.value("out", "");
  if (out.empty()) return;
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ifs::IoError("cannot write: " + out);
  f << report.dump(2) << "\n";
  ifs::RunManifest man;
  man.command = command;
  man.params = params;
  man.outputs = {out};
  ifs::save_manifest(ifs::manifest_path_for(out), man);
}

// ------------------------------------------------------------------ commands

int cmd_validate(const json& params) {
  ifs::IfsSystem sys = load_system(params);
  ifs::ValidationReport rep = ifs::validate(sys);
  json issues = json::array();
  for (const auto& v : rep.issues)
    issues.push_back({{"code", v.code}, {"message", v.message}, {"map", v.map_index}});
  json report = {{"system", sys.name()}, {"ok", rep.ok()}, {"issues", issues}};
  std::string text = "system " + sys.name() + ": " +
                     (rep.ok() ? "ok\n" : "INVALID\n" + rep.summary());
  emit(report, params.value("json", false), text);
  write_report(params, report, "validate");
  return rep.ok() ? 0 : 1;
}

int cmd_bounds(const json& params) {
  ifs::IfsSystem sys = load_system(params);
  double tol = params.value("tol", 1e-6);
  ifs::BoundsReport rep = ifs::dimension_bounds(sys, tol);
  const ifs::MomentReport& m = rep.moments;

  json report = {
      {"system", sys.name()},
      {"dim_lower", enclosure_json(rep.dim_lower)},
      {"dim_upper", enclosure_json(rep.dim_upper)},
      {"moments",
       {{"mean_expansion", enclosure_json(m.mean_expansion)},
        {"mean_displacement", enclosure_json(m.mean_displacement)},
        {"lyapunov_upper", enclosure_json(m.lyapunov_upper)},
        {"lyapunov_lower", enclosure_json(m.lyapunov_lower)},
        {"entropy", enclosure_json(m.entropy)},
        {"terms_used", m.terms_used},
        {"x0", m.x0.to_vector()}}},
      {"flags",
       {{"mean_expansion_finite", rep.flags.mean_expansion_finite},
        {"mean_displacement_finite", rep.flags.mean_displacement_finite},
        {"lyapunov_upper_negative", rep.flags.lyapunov_upper_negative},
        {"entropy_finite", rep.flags.entropy_finite},
        {"lyapunov_lower_finite", rep.flags.lyapunov_lower_finite},
        {"lyapunov_lower_negative", rep.flags.lyapunov_lower_negative}}},
      {"notes", rep.notes}};

  char buf[1024];
  std::snprintf(
      buf, sizeof(buf),
      "system %s (%llu terms)\n"
      "  mean expansion     %+.9f  (+/- %.3g)\n"
      "  mean displacement  %+.9f  (+/- %.3g)\n"
      "  lyapunov upper     %+.9f  (+/- %.3g)\n"
      "  lyapunov lower     %+.9f  (+/- %.3g)\n"
      "  entropy            %+.9f  (+/- %.3g)\n"
      "  dimension lower    %.9f   (+/- %.3g)\n"
      "  dimension upper    %.9f   (+/- %.3g)\n",
      sys.name().c_str(), static_cast<unsigned long long>(m.terms_used),
      m.mean_expansion.value, m.mean_expansion.radius, m.mean_displacement.value,
      m.mean_displacement.radius, m.lyapunov_upper.value, m.lyapunov_upper.radius,
      m.lyapunov_lower.value, m.lyapunov_lower.radius, m.entropy.value,
      m.entropy.radius, rep.dim_lower.value, rep.dim_lower.radius,
      rep.dim_upper.value, rep.dim_upper.radius);
  std::string text = buf;
  if (!rep.notes.empty()) text += "  note: " + rep.notes + "\n";
  emit(report, params.value("json", false), text);
  write_report(params, report, "bounds");
  return 0;
}

int cmd_simulate(const json& params) {
  ifs::IfsSystem sys = load_system(params);
  ifs::OrbitParams op;
  op.count = params.at("count").get<std::uint64_t>();
  op.burn_in = params.value("burn_in", std::uint64_t{1024});
  op.seed = params.value("seed", std::uint64_t{1});
  op.workers = params.value("threads", 0u);
  ifs::Vec x0 = params.contains("x0")
                    ? ifs::Vec::from(params.at("x0").get<std::vector<double>>())
                    : ifs::default_base_point(sys);
  std::string out = params.at("out").get<std::string>();

  ifs::PointCloud cloud = ifs::forward_orbit(sys, x0, op);
  ifs::save_point_cloud(out, cloud);
  ifs::RunManifest man;
  man.command = "simulate";
  man.params = params;
  man.outputs = {out, ifs::cloud_sidecar_path(out)};
  ifs::save_manifest(ifs::manifest_path_for(out), man);
  std::printf("wrote %llu points (dim %zu, seed %llu) to %s\n",
              static_cast<unsigned long long>(op.count), cloud.dim(),
              static_cast<unsigned long long>(op.seed), out.c_str());
  return 0;
}

int cmd_estimate(const json& params) {
  ifs::PointCloud cloud = ifs::load_point_cloud(params.at("input").get<std::string>());

  std::optional<ifs::IfsSystem> sys;
  if (!params.value("preset", "").empty() || !params.value("config", "").empty())
    sys = load_system(params);

  std::optional<std::pair<double, double>> band;
  std::string band_note;
  if (sys) {
    try {
      ifs::BoundsReport b = ifs::dimension_bounds(*sys, 1e-6);
      band = {b.dim_lower.value - 0.1, b.dim_upper.value + 0.1};
    } catch (const ifs::Error& e) {
      band_note = e.what();
    }
  }

  ifs::ProfileParams pp;
  pp.n_centers = params.value("centers", std::uint64_t{200});
  pp.seed = params.value("seed", std::uint64_t{7});
  pp.min_count = params.value("min_count", std::uint64_t{50});
  pp.r0 = params.value("r0", 0.0);
  pp.max_levels = params.value("max_levels", 60);
  pp.workers = params.value("threads", 0u);
  std::string edge = params.value("edge", "auto");
  pp.edge_exclusion = edge == "on" || (edge == "auto" && sys && !sys->space().bounded());

  ifs::DimensionProfile prof = ifs::dimension_profile(cloud, pp, band);

  json report = {{"input", params.at("input")},
                 {"points", cloud.size()},
                 {"centers_used", prof.slopes.size()},
                 {"excluded_edge", prof.excluded_edge},
                 {"excluded_insufficient", prof.excluded_insufficient},
                 {"r0", prof.r0},
                 {"q10", prof.q10},
                 {"q50", prof.q50},
                 {"q90", prof.q90}};
  if (band) {
    report["band_lo"] = prof.band_lo;
    report["band_hi"] = prof.band_hi;
    report["coverage"] = prof.coverage;
  }
  if (!band_note.empty()) report["band_note"] = band_note;

  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%zu centers on %zu points (r0 %.6g, %zu edge-excluded, %zu "
                "data-excluded)\n  slope quantiles  q10 %.4f  q50 %.4f  q90 %.4f\n",
                prof.slopes.size(), cloud.size(), prof.r0, prof.excluded_edge,
                prof.excluded_insufficient, prof.q10, prof.q50, prof.q90);
  std::string text = buf;
  if (band) {
    std::snprintf(buf, sizeof(buf), "  coverage of [%.4f, %.4f]: %.3f\n",
                  prof.band_lo, prof.band_hi, prof.coverage);
    text += buf;
  } else if (!band_note.empty()) {
    text += "  no reference band: " + band_note + "\n";
  }
  emit(report, params.value("json", false), text);

  std::string out = params.value("out", "");
  if (!out.empty()) {
    std::FILE* f = std::fopen(out.c_str(), "wb");
    if (!f) throw ifs::IoError("cannot write: " + out);
    std::fprintf(f, "center_id");
    for (std::size_t a = 0; a < cloud.dim(); ++a)
      std::fprintf(f, ",x%zu", a + 1);
    std::fprintf(f, ",slope,stderr,radii_used\n");
    for (std::size_t t = 0; t < prof.slopes.size(); ++t) {
      std::fprintf(f, "%u", prof.center_ids[t]);
      const double* p = cloud.row(prof.center_ids[t]);
      for (std::size_t a = 0; a < cloud.dim(); ++a)
        std::fprintf(f, ",%.17g", p[a]);
      std::fprintf(f, ",%.17g,%.17g,%u\n", prof.slopes[t].slope,
                   prof.slopes[t].stderr_, prof.slopes[t].radii_used);
    }
    std::fclose(f);
    ifs::RunManifest man;
    man.command = "estimate";
    man.params = params;
    man.outputs = {out};
    ifs::save_manifest(ifs::manifest_path_for(out), man);
  }
  return 0;
}

int cmd_render(const json& params) {
  ifs::PointCloud cloud = ifs::load_point_cloud(params.at("input").get<std::string>());
  ifs::SvgParams sp;
  sp.width = params.value("width", 800u);
  sp.height = params.value("height", 800u);
  sp.max_points = params.value("max_points", std::uint64_t{100000});
  sp.title = params.value("title", "");
  std::string out = params.at("out").get<std::string>();
  std::string svg = ifs::render_scatter_svg(cloud, sp);
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ifs::IoError("cannot write: " + out);
  f << svg;
  if (!f) throw ifs::IoError("write failed: " + out);
  f.close();
  ifs::RunManifest man;
  man.command = "render";
  man.params = params;
  man.outputs = {out};
  ifs::save_manifest(ifs::manifest_path_for(out), man);
  std::printf("wrote %s (%zu points)\n", out.c_str(), cloud.size());
  return 0;
}

int cmd_osc(const json& params) {
  ifs::IfsSystem sys = load_system(params);
  if (!sys.default_open_set)
    throw ifs::InvalidArgument("system has no open set; add \"open_set\" to the config");
  const ifs::OpenSetSpec& O = *sys.default_open_set;
  ifs::Symbol horizon = params.value("horizon", 50u);
  ifs::OscReport rep = ifs::check_osc(sys, O, horizon);

  std::optional<ifs::MassCheck> mass;
  std::string mass_input = params.value("mass_input", "");
  if (!mass_input.empty())
    mass = ifs::support_mass(ifs::load_point_cloud(mass_input), O);

  json containment = json::array(), pairs = json::array();
  for (const auto& c : rep.containment)
    containment.push_back({{"map", c.index}, {"contained", c.contained},
                           {"method", c.method}});
  for (const auto& p : rep.pairs)
    pairs.push_back({{"i", p.i}, {"j", p.j}, {"disjoint", p.disjoint},
                     {"method", p.method}});
  json report = {{"system", sys.name()},
                 {"all_contained", rep.all_contained},
                 {"all_disjoint", rep.all_disjoint},
                 {"horizon", rep.horizon},
                 {"tail", rep.tail},
                 {"tail_note", rep.tail_note},
                 {"containment", containment},
                 {"pairs", pairs}};
  bool ok = rep.ok();
  if (mass) {
    report["mass"] = {{"fraction", mass->fraction}, {"ci_lo", mass->ci_lo},
                      {"ci_hi", mass->ci_hi}, {"positive", mass->positive}};
    ok = ok && mass->positive;
  }

  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "system %s: containment %s, disjointness %s (horizon %u, tail: %s)\n",
                sys.name().c_str(), rep.all_contained ? "ok" : "FAILED",
                rep.all_disjoint ? "ok" : "FAILED", rep.horizon, rep.tail.c_str());
  std::string text = buf;
  if (!rep.tail_note.empty()) text += "  " + rep.tail_note + "\n";
  if (mass) {
    std::snprintf(buf, sizeof(buf),
                  "  open-set mass: %.6f (3-sigma band [%.6f, %.6f]) -> %s\n",
                  mass->fraction, mass->ci_lo, mass->ci_hi,
                  mass->positive ? "positive" : "NOT POSITIVE");
    text += buf;
  }
  emit(report, params.value("json", false), text);
  write_report(params, report, "osc");
  return ok ? 0 : 1;
}

int run_command(const std::string& cmd, const json& params) {
  if (cmd == "validate") return cmd_validate(params);
  if (cmd == "bounds") return cmd_bounds(params);
  if (cmd == "simulate") return cmd_simulate(params);
  if (cmd == "estimate") return cmd_estimate(params);
  if (cmd == "render") return cmd_render(params);
  if (cmd == "osc") return cmd_osc(params);
  throw ifs::InvalidArgument("unknown command in manifest: " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iterated function system toolkit"};
  app.require_subcommand(1);

  std::string preset, config, out, input, title, edge = "auto", manifest_file;
  std::string mass_input;
  std::vector<double> x0;
  double tol = 1e-6, r0 = 0.0;
  std::uint64_t count = 0, burn_in = 1024, seed = 1, centers = 200, min_count = 50;
  std::uint64_t max_points = 100000;
  unsigned threads = 0, width = 800, height = 800, horizon = 50;
  int max_levels = 60;
  bool as_json = false;

  auto add_system = [&](CLI::App* c) {
    c->add_option("--preset", preset, "built-in system name");
    c->add_option("--config", config, "system config (JSON file)");
  };

  CLI::App* v = app.add_subcommand("validate", "check a system's hypotheses");
  add_system(v);
  v->add_flag("--json", as_json, "JSON output");
  v->add_option("-o,--out", out, "write the report to a JSON file");

  CLI::App* b = app.add_subcommand("bounds", "dimension bounds from the series");
  add_system(b);
  b->add_option("--tol", tol, "error bound on each reported quotient");
  b->add_flag("--json", as_json, "JSON output");
  b->add_option("-o,--out", out, "write the report to a JSON file");

  CLI::App* s = app.add_subcommand("simulate", "sample the invariant measure");
  add_system(s);
  s->add_option("-n,--count", count, "points to emit")->required();
  s->add_option("--burn-in", burn_in, "steps discarded per shard");
  s->add_option("--seed", seed, "random seed");
  s->add_option("--threads", threads, "worker threads (0 = auto)");
  s->add_option("--x0", x0, "start point coordinates")->expected(-1);
  s->add_option("-o,--out", out, "output CSV path")->required();

  CLI::App* e = app.add_subcommand("estimate", "local dimension profile of a cloud");
  e->add_option("-i,--input", input, "point cloud CSV")->required();
  add_system(e);
  e->add_option("--centers", centers, "number of centers");
  e->add_option("--seed", seed, "center-sampling seed");
  e->add_option("--min-count", min_count, "smallest usable ball count");
  e->add_option("--r0", r0, "largest radius (0 = bbox diagonal / 8)");
  e->add_option("--max-levels", max_levels, "dyadic ladder length");
  e->add_option("--edge", edge, "edge exclusion: auto|on|off")
      ->check(CLI::IsMember({"auto", "on", "off"}));
  e->add_option("--threads", threads, "worker threads (0 = auto)");
  e->add_flag("--json", as_json, "JSON output");
  e->add_option("-o,--out", out, "write per-center slopes to a CSV file");

  CLI::App* r = app.add_subcommand("render", "SVG scatter plot of a cloud");
  r->add_option("-i,--input", input, "point cloud CSV")->required();
  r->add_option("--width", width, "canvas width");
  r->add_option("--height", height, "canvas height");
  r->add_option("--max-points", max_points, "downsampling cap");
  r->add_option("--title", title, "plot title");
  r->add_option("-o,--out", out, "output SVG path")->required();

  CLI::App* o = app.add_subcommand("osc", "open-set separation checks");
  add_system(o);
  o->add_option("--horizon", horizon, "indices checked for infinite families");
  o->add_option("--mass-input", mass_input, "cloud CSV for the mass check");
  o->add_flag("--json", as_json, "JSON output");
  o->add_option("-o,--out", out, "write the report to a JSON file");

  CLI::App* rp = app.add_subcommand("replay", "re-run a recorded manifest");
  rp->add_option("manifest", manifest_file, "manifest JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    int code = app.exit(ex);
    return code == 0 ? 0 : 2;
  }

  json params;
  auto put_system = [&]() {
    if (!preset.empty()) params["preset"] = preset;
    if (!config.empty()) params["config"] = config;
  };
  std::string cmd;
  if (v->parsed()) {
    cmd = "validate";
    put_system();
    params["json"] = as_json;
    if (!out.empty()) params["out"] = out;
  } else if (b->parsed()) {
    cmd = "bounds";
    put_system();
    params["tol"] = tol;
    params["json"] = as_json;
    if (!out.empty()) params["out"] = out;
  } else if (s->parsed()) {
    cmd = "simulate";
    put_system();
    params["count"] = count;
    params["burn_in"] = burn_in;
    params["seed"] = seed;
    params["threads"] = threads;
    if (!x0.empty()) params["x0"] = x0;
    params["out"] = out;
  } else if (e->parsed()) {
    cmd = "estimate";
    params["input"] = input;
    put_system();
    params["centers"] = centers;
    params["seed"] = seed;
    params["min_count"] = min_count;
    params["r0"] = r0;
    params["max_levels"] = max_levels;
    params["edge"] = edge;
    params["threads"] = threads;
    params["json"] = as_json;
    if (!out.empty()) params["out"] = out;
  } else if (r->parsed()) {
    cmd = "render";
    params["input"] = input;
    params["width"] = width;
    params["height"] = height;
    params["max_points"] = max_points;
    params["title"] = title;
    params["out"] = out;
  } else if (o->parsed()) {
    cmd = "osc";
    put_system();
    params["horizon"] = horizon;
    if (!mass_input.empty()) params["mass_input"] = mass_input;
    params["json"] = as_json;
    if (!out.empty()) params["out"] = out;
  }

  try {
    if (rp->parsed()) {
      ifs::RunManifest m = ifs::load_manifest(manifest_file);
      return run_command(m.command, m.params);
    }
    return run_command(cmd, params);
  } catch (const ifs::InvalidArgument& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  } catch (const ifs::IoError& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  } catch (const ifs::UnsupportedMap& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  } catch (const ifs::Error& ex) {
    std::fprintf(stderr, "analysis failed: %s\n", ex.what());
    return 1;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }
}
