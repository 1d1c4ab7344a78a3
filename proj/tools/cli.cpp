#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "experiment.hpp"
#include "ifslab/io.hpp"
#include "ifslab/parallel.hpp"
#include "ifslab/serialize.hpp"

namespace ifslab::cli {

namespace {

struct Globals {
  std::optional<double> epsilon;
  std::optional<double> tol;
  std::optional<int> n_max;
  unsigned threads = 0;
  std::string out_dir;
  std::string format = "csv";

  Overrides overrides() const { return {epsilon, tol, n_max}; }
};

struct NamedMap {
  Map map;
  std::optional<Point> start;
};

NamedMap map_by_name(const std::string& name) {
  if (name == "interval-square") return {make_interval_alr(0.0, 1.0, AlrVariant::Square), Point::real(0.5)};
  if (name == "interval-sqrt") return {make_interval_alr(0.0, 1.0, AlrVariant::Sqrt), Point::real(0.5)};
  if (name == "arc") return {make_arc_alr(0.0, kPi), Point::angle(kPi / 2.0)};
  if (name == "disc") return {make_disc_alr(), Point::plane(0.0, 0.0)};
  if (name == "kwietniak") return {make_kwietniak_map(), Point::real(-5.0)};
  Json j;
  try {
    j = name.starts_with("{") ? Json::parse(name) : load_config(name);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("bad map descriptor: ") + e.what());
  }
  try {
    return {map_from_json(j), std::nullopt};
  } catch (const Error& e) {
    throw ConfigError(std::string("bad map descriptor: ") + e.what());
  }
}

std::string seed_cells(const Point& p, const Space& space) {
  if (p.at_infinity) return space.dimension() == 2 ? "inf,inf" : "inf";
  if (space.dimension() == 2) return format_double(p.x) + "," + format_double(p.y);
  return format_double(p.x);
}

void emit(std::ostream& out, const std::string& out_dir, const std::string& file, const std::string& bytes) {
  if (out_dir.empty())
    out << bytes;
  else
    write_file(out_dir + "/" + file, bytes);
}

std::string key_values(const Json& j) {
  std::ostringstream s;
  s << "key,value\n";
  for (const auto& [k, v] : j.items()) {
    if (v.is_structured()) continue;
    s << k << ',';
    if (v.is_number_float())
      s << format_double(v.get<double>());
    else if (v.is_string())
      s << v.get<std::string>();
    else
      s << v.dump();
    s << '\n';
  }
  return s.str();
}

Viewport parse_viewport(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  try {
    for (std::string c; std::getline(ss, c, ',');) v.push_back(std::stod(c));
  } catch (const std::logic_error&) {
    throw ConfigError("bad viewport '" + text + "'");
  }
  if (v.size() == 2) return {v[0], v[1], 0.0, 1.0};
  if (v.size() == 4) return {v[0], v[1], v[2], v[3]};
  throw ConfigError("viewport needs 2 or 4 numbers");
}

Verdict aggregate(const std::vector<PointwiseReport>& reps) {
  bool all = true;
  for (const auto& r : reps) {
    if (r.verdict == Verdict::Diverged) return Verdict::Diverged;
    if (r.verdict != Verdict::Converged) all = false;
  }
  return all ? Verdict::Converged : Verdict::Inconclusive;
}

int code_of(Verdict v) {
  return v == Verdict::Converged ? kExitOk : (v == Verdict::Diverged ? kExitContrary : kExitInconclusive);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Iterated function systems with attracting maps: orbits, attractor tests and renders", "ifslab"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--epsilon", g.epsilon, "Net resolution")->check(CLI::PositiveNumber);
  app.add_option("--tol", g.tol, "Convergence tolerance")->check(CLI::PositiveNumber);
  app.add_option("--n-max", g.n_max, "Maximum number of steps")->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Worker threads (0 keeps the default)");
  app.add_option("--out-dir", g.out_dir, "Output directory (default $IFSLAB_OUT_DIR, else stdout)");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"csv", "json"}));

  // verify-alr
  auto* alr = app.add_subcommand("verify-alr", "Check that a map is attracting with a local repellor");
  std::string alr_map;
  int alr_samples = 200;
  std::string alr_start;
  alr->add_option("--map", alr_map,
                  "interval-square, interval-sqrt, arc, disc, kwietniak, a JSON descriptor or a descriptor file")
      ->required();
  alr->add_option("--samples", alr_samples, "Number of sample orbits")->check(CLI::PositiveNumber);
  alr->add_option("--witness-start", alr_start, "Start of the witnessing sequence");

  // orbit
  auto* orbit = app.add_subcommand("orbit", "Iterate the Hutchinson operator from a seed");
  std::string orbit_preset, orbit_seed;
  std::optional<int> orbit_steps;
  bool dump_steps = false;
  orbit->add_option("--preset", orbit_preset, "Gallery preset")->required();
  orbit->add_option("--seed", orbit_seed, "Seed point: x, \"x,y\" or inf")->required();
  orbit->add_option("-n,--steps", orbit_steps, "Number of steps (default --n-max)")->check(CLI::PositiveNumber);
  orbit->add_flag("--dump-steps", dump_steps, "Write each step as a point-cloud CSV into --out-dir");

  // pointwise
  auto* pw = app.add_subcommand("pointwise", "Test convergence of singleton orbits to the target");
  std::string pw_preset;
  std::vector<std::string> pw_seeds;
  pw->add_option("--preset", pw_preset, "Gallery preset")->required();
  pw->add_option("--seed", pw_seeds, "Seed point (repeatable; default: the preset's seeds)");

  // refute-strict
  auto* rs = app.add_subcommand("refute-strict", "Show that the target is not a strict attractor");
  std::string rs_preset;
  int rs_tail = -1;
  bool rs_no_pointwise = false;
  rs->add_option("--preset", rs_preset, "Gallery preset")->required();
  rs->add_option("--tail-start", rs_tail, "First witness index kept in K (default: automatic)");
  rs->add_flag("--no-pointwise", rs_no_pointwise, "Skip the pointwise test on the preset's seeds");

  // gallery render
  auto* gallery = app.add_subcommand("gallery", "Gallery utilities");
  gallery->require_subcommand(1);
  auto* render = gallery->add_subcommand("render", "Render a target, a level net or an orbit step");
  std::string r_preset, r_what = "target", r_seed, r_output, r_format, r_view;
  int r_level = 5, r_step = -1, r_width = 1024;
  std::optional<int> r_height;
  render->add_option("--preset", r_preset, "Gallery preset")->required();
  render->add_option("--what", r_what, "target, level or orbit")->check(CLI::IsMember({"target", "level", "orbit"}));
  render->add_option("--level", r_level, "Depth of the level net (one point per cell)")->check(CLI::NonNegativeNumber);
  render->add_option("--seed", r_seed, "Seed of the rendered orbit");
  render->add_option("--step", r_step, "Orbit step to render (default --n-max)");
  render->add_option("--output", r_output, "Output file (default render.<format> in --out-dir)");
  render->add_option("--render-format", r_format, "pgm or svg (default from the output extension)")
      ->check(CLI::IsMember({"pgm", "svg"}));
  render->add_option("--width", r_width, "Width in pixels")->check(CLI::PositiveNumber);
  render->add_option("--height", r_height, "Height in pixels")->check(CLI::PositiveNumber);
  render->add_option("--viewport", r_view, "x_lo,x_hi[,y_lo,y_hi]");

  // experiment run
  auto* experiment = app.add_subcommand("experiment", "Config-driven experiments");
  experiment->require_subcommand(1);
  auto* exp_run = experiment->add_subcommand("run", "Run an experiment config");
  std::string config_path;
  exp_run->add_option("config", config_path, "Config file (JSON)")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (g.threads > 0) set_thread_count(g.threads);
    const Overrides ov = g.overrides();
    const bool json = g.format == "json";

    if (*alr) {
      const NamedMap nm = map_by_name(alr_map);
      std::mt19937_64 rng(1);
      std::vector<Point> pts;
      for (int i = 0; i < alr_samples; ++i) pts.push_back(nm.map.space().sample(rng));
      AlrOptions o;
      if (g.n_max) o.n_max = *g.n_max;
      if (g.tol) o.tol = *g.tol;
      o.witness_start = alr_start.empty() ? nm.start : std::optional(point_from_text(alr_start, nm.map.space()));
      const AlrReport r = alr_verify(nm.map, CompactSet(nm.map.space(), std::move(pts), 1e-12), o);
      Json j = {{"map", nm.map.label()},
                {"passed", r.passed()},
                {"attracting", r.attracting},
                {"repellor_found", r.repellor_found},
                {"attracting_failure", r.attracting_failure},
                {"repellor_note", r.repellor_note}};
      if (r.witness) {
        j["repellor"] = point_json(r.witness->repellor, nm.map.space());
        j["witness_length"] = r.witness->length();
        j["witness_max_residual"] = r.witness->max_residual();
        j["witness_terminal_distance"] = r.witness->terminal_distance();
      }
      const std::string dir = resolve_out_dir(g.out_dir);
      emit(out, dir, json ? "alr.json" : "alr.csv", json ? j.dump(2) + "\n" : key_values(j));
      return r.passed() ? kExitOk : kExitContrary;
    }

    if (*orbit) {
      const Setup s = setup_from_preset(orbit_preset, ov);
      const Point seed = point_from_text(orbit_seed, s.F.space());
      const OrbitRecord rec = iterate_orbit(s.F.with_target(s.A), CompactSet(s.F.space(), {seed}, s.epsilon),
                                            orbit_steps.value_or(s.n_max), s.epsilon);
      const std::string dir = resolve_out_dir(g.out_dir);
      if (dump_steps) {
        if (dir.empty()) throw ConfigError("--dump-steps needs --out-dir");
        for (std::size_t k = 0; k < rec.steps.size(); ++k) {
          std::ostringstream pc;
          write_point_cloud_csv(pc, rec.steps[k]);
          write_file(dir + "/step" + std::to_string(k) + ".csv", pc.str());
        }
      }
      if (json) {
        Json steps = Json::array();
        for (std::size_t k = 0; k < rec.steps.size(); ++k)
          steps.push_back({{"step", k}, {"point_count", rec.steps[k].size()}, {"distance_to_target", rec.distances[k]}});
        emit(out, dir, "orbit.json",
             Json{{"preset", s.name}, {"epsilon", s.epsilon}, {"truncated", rec.truncated}, {"steps", steps}}.dump(2) +
                 "\n");
      } else {
        std::ostringstream csv;
        write_orbit_csv(csv, rec);
        emit(out, dir, "orbit.csv", csv.str());
      }
      if (rec.truncated) err << "warning: orbit truncated at the point cap\n";
      return kExitOk;
    }

    if (*pw) {
      const Setup s = setup_from_preset(pw_preset, ov);
      std::vector<Point> seeds = s.seeds;
      if (!pw_seeds.empty()) {
        seeds.clear();
        for (const auto& t : pw_seeds) seeds.push_back(point_from_text(t, s.F.space()));
      }
      std::vector<PointwiseReport> reps;
      for (const Point& p : seeds) reps.push_back(pointwise_test(s.F, p, s.A, s.n_max, s.tol, s.epsilon));
      const Verdict v = aggregate(reps);
      const bool two = s.F.space().dimension() == 2;
      const std::string dir = resolve_out_dir(g.out_dir);
      if (json) {
        Json rows = Json::array();
        for (std::size_t k = 0; k < seeds.size(); ++k)
          rows.push_back({{"seed", point_json(seeds[k], s.F.space())},
                          {"verdict", to_string(reps[k].verdict)},
                          {"converged_at", reps[k].converged_at},
                          {"final_distance", reps[k].distances.back()}});
        emit(out, dir, "pointwise.json",
             Json{{"preset", s.name}, {"verdict", to_string(v)}, {"seeds", rows}}.dump(2) + "\n");
      } else {
        std::ostringstream csv;
        csv << (two ? "seed_x,seed_y" : "seed") << ",verdict,converged_at,final_distance\n";
        for (std::size_t k = 0; k < seeds.size(); ++k)
          csv << seed_cells(seeds[k], s.F.space()) << ',' << to_string(reps[k].verdict) << ','
              << reps[k].converged_at << ',' << format_double(reps[k].distances.back()) << '\n';
        emit(out, dir, "pointwise.csv", csv.str());
      }
      return code_of(v);
    }

    if (*rs) {
      const Setup s = setup_from_preset(rs_preset, ov);
      if (!s.phi || !s.witness_x0) throw ConfigError("preset '" + rs_preset + "' has no gap to witness in");
      Json j = {{"preset", s.name}, {"epsilon", s.epsilon}};
      int code = kExitOk;
      try {
        const WitnessingSequence w = witnessing_sequence(*s.phi, *s.witness_x0, *s.witness_repellor, s.witness_length);
        const StrictRefuteReport r = strict_refute(s.F, s.A, w, rs_tail, s.n_max, s.epsilon);
        j["strict_refuted"] = r.refuted;
        j["x0_distance"] = r.x0_distance;
        j["min_distance"] = r.min_distance;
        j["margin_reproduced"] = std::abs(r.min_distance - r.x0_distance) <= 3.0 * s.epsilon;
        j["tail_start"] = r.tail_start;
        j["horizon"] = r.horizon;
        j["witness_max_residual"] = w.max_residual();
        if (!r.refuted) code = kExitContrary;
      } catch (const WitnessError& e) {
        j["strict_refuted"] = nullptr;
        j["note"] = e.what();
        code = kExitInconclusive;
      }
      if (!rs_no_pointwise && !s.seeds.empty()) {
        std::vector<PointwiseReport> reps;
        for (const Point& p : s.seeds) reps.push_back(pointwise_test(s.F, p, s.A, s.n_max, s.tol, s.epsilon));
        const Verdict v = aggregate(reps);
        j["pointwise"] = to_string(v);
        j["pointwise_seeds"] = reps.size();
        if (v == Verdict::Diverged) code = kExitContrary;
        if (v == Verdict::Inconclusive && code == kExitOk) code = kExitInconclusive;
      }
      const std::string dir = resolve_out_dir(g.out_dir);
      emit(out, dir, json ? "refute.json" : "refute.csv", json ? j.dump(2) + "\n" : key_values(j));
      return code;
    }

    if (*render) {
      const Setup s = setup_from_preset(r_preset, ov);
      std::optional<CompactSet> set;
      if (r_what == "target") {
        set = s.A;
      } else if (r_what == "level") {
        if (!s.preset || !s.preset->gap) throw ConfigError("--what level needs a fractal preset");
        const GapSystem& gs = *s.preset->gap;
        set = CompactSet(gs.W.space(), {gs.gap_center}, 1e-12);
        for (int d = 0; d < r_level; ++d) set = apply_operator(gs.W, *set, 1e-12);
      } else {
        if (r_seed.empty()) throw ConfigError("--what orbit needs --seed");
        const Point seed = point_from_text(r_seed, s.F.space());
        const OrbitRecord rec = iterate_orbit(s.F, CompactSet(s.F.space(), {seed}, s.epsilon),
                                              r_step >= 0 ? std::max(1, r_step) : s.n_max, s.epsilon);
        set = r_step == 0 ? rec.initial() : rec.last();
      }
      std::string fmt = r_format;
      if (fmt.empty()) fmt = r_output.ends_with(".svg") ? "svg" : "pgm";
      const bool line = set->space().dimension() == 1 && set->space().kind() != SpaceKind::Circle;
      const int height = r_height.value_or(line ? 64 : r_width);
      Viewport view = r_view.empty() ? default_viewport(*set) : parse_viewport(r_view);
      if (r_view.empty() && s.preset && s.preset->gap) {
        const bool cantor = s.preset->gap->kind == FractalKind::Cantor;
        view = cantor ? Viewport{-0.02, 1.02, 0.0, 1.0} : Viewport{-0.02, 1.02, -0.02, 1.02};
      }
      const RenderResult img = fmt == "svg" ? render_svg(*set, view, r_width, height) : render_pgm(*set, view, r_width, height);
      if (img.drawn == 0) err << "warning: no points fall inside the viewport; the image is blank\n";
      if (r_output.empty()) {
        const std::string dir = resolve_out_dir(g.out_dir);
        if (dir.empty()) throw ConfigError("gallery render needs --output or --out-dir");
        r_output = dir + "/render." + fmt;
      }
      write_file(r_output, img.bytes);
      err << "wrote " << r_output << " (" << img.drawn << " points)\n";
      return kExitOk;
    }

    if (*exp_run) {
      const Json cfg = load_config(config_path);
      std::string dir = resolve_out_dir(g.out_dir);
      if (dir.empty()) dir = resolve_out_dir("ifslab-out");
      const ExperimentResult res = run_experiment(cfg, ov, dir, err);
      if (json)
        out << res.report.dump(2) << "\n";
      else
        out << res.report.value("name", std::string("experiment")) << ": exit " << res.exit_code << "\n";
      return res.exit_code;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace ifslab::cli
