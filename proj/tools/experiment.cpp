#include "experiment.hpp"

#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "ifslab/io.hpp"

namespace ifslab::cli {

namespace {

const std::vector<std::string> kChecks = {"pointwise", "refute-strict", "verify-alr", "fixed-set"};

struct Outputs {
  bool orbits = true;
  bool point_clouds = false;
  std::optional<std::string> render_format;
  int width = 512;
  int height = 512;
};

struct Expectation {
  std::string key;
  Json expected;
};

std::string join(const std::string& dir, const std::string& file) { return dir + "/" + file; }

std::vector<std::string> parse_checks(const Json& cfg) {
  if (!cfg.contains("checks")) return {"pointwise"};
  const Json& c = cfg.at("checks");
  if (!c.is_array() || c.empty()) throw ConfigError("'checks' must be a nonempty array");
  std::vector<std::string> out;
  for (const Json& x : c) {
    if (!x.is_string() || std::find(kChecks.begin(), kChecks.end(), x.get<std::string>()) == kChecks.end())
      throw ConfigError("unknown check " + x.dump());
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::vector<Expectation> parse_expect(const Json& cfg) {
  std::vector<Expectation> out;
  if (!cfg.contains("expect")) return out;
  const Json& e = cfg.at("expect");
  if (!e.is_object()) throw ConfigError("'expect' must be an object");
  for (const auto& [key, value] : e.items()) {
    if (key == "pointwise") {
      const bool ok = value.is_string() &&
                      (value == "converged" || value == "diverged" || value == "inconclusive");
      if (!ok) throw ConfigError("expect.pointwise must be converged, diverged or inconclusive");
    } else if (key == "strict_refuted" || key == "alr" || key == "fixed_set") {
      if (!value.is_boolean()) throw ConfigError("expect." + key + " must be a boolean");
    } else {
      throw ConfigError("unknown expectation '" + key + "'");
    }
    out.push_back({key, value});
  }
  return out;
}

Outputs parse_outputs(const Json& cfg) {
  Outputs o;
  if (!cfg.contains("outputs")) return o;
  const Json& j = cfg.at("outputs");
  if (!j.is_object()) throw ConfigError("'outputs' must be an object");
  try {
    o.orbits = j.value("orbits", true);
    o.point_clouds = j.value("point_clouds", false);
    if (j.contains("render")) {
      const Json& r = j.at("render");
      o.render_format = r.value("format", std::string("pgm"));
      if (*o.render_format != "pgm" && *o.render_format != "svg") throw ConfigError("render format must be pgm or svg");
      o.width = r.value("width", 512);
      o.height = r.value("height", 512);
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad outputs: ") + e.what());
  }
  return o;
}

Overrides merged(const Json& cfg, const Overrides& o) {
  Overrides m = o;
  try {
    if (!m.epsilon && cfg.contains("epsilon")) m.epsilon = cfg.at("epsilon").get<double>();
    if (!m.tol && cfg.contains("tol")) m.tol = cfg.at("tol").get<double>();
    if (!m.n_max && cfg.contains("n_max")) m.n_max = cfg.at("n_max").get<int>();
  } catch (const Json::exception&) {
    throw ConfigError("epsilon, tol and n_max must be numbers");
  }
  return m;
}

std::string csv_of(const PointwiseReport& r) {
  std::ostringstream s;
  write_orbit_csv(s, r.point_counts, r.distances);
  return s.str();
}

Verdict aggregate(const std::vector<PointwiseReport>& reports) {
  bool all = true;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Diverged) return Verdict::Diverged;
    if (r.verdict != Verdict::Converged) all = false;
  }
  return all ? Verdict::Converged : Verdict::Inconclusive;
}

}  // namespace

Json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config '" + path + "'");
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

ExperimentResult run_experiment(const Json& cfg, const Overrides& o, const std::string& out_dir, std::ostream& log) {
  if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
  if (!cfg.contains("system")) throw ConfigError("config is missing 'system'");
  const auto checks = parse_checks(cfg);
  const auto expectations = parse_expect(cfg);
  const Outputs outputs = parse_outputs(cfg);
  const std::string name = cfg.value("name", std::string("experiment"));
  const auto has = [&](const char* c) { return std::find(checks.begin(), checks.end(), c) != checks.end(); };

  Setup s = setup_from_config(cfg.at("system"), merged(cfg, o));
  std::vector<Point> seeds = s.seeds;
  if (cfg.contains("seeds")) {
    const Json& js = cfg.at("seeds");
    if (!js.is_array() || js.empty()) throw ConfigError("'seeds' must be a nonempty array");
    seeds.clear();
    for (const Json& p : js) seeds.push_back(point_from_json_in(p, s.F.space()));
  }
  if (cfg.contains("seed_count")) {
    const Json& n = cfg.at("seed_count");
    if (!n.is_number_integer() || n.get<int>() < 1) throw ConfigError("'seed_count' must be a positive integer");
    if (static_cast<std::size_t>(n.get<int>()) < seeds.size()) seeds.resize(static_cast<std::size_t>(n.get<int>()));
  }
  for (const Expectation& e : expectations) {
    const char* needed = e.key == "pointwise"        ? "pointwise"
                         : e.key == "strict_refuted" ? "refute-strict"
                         : e.key == "alr"            ? "verify-alr"
                                                     : "fixed-set";
    if (!has(needed)) throw ConfigError("expectation '" + e.key + "' needs the '" + needed + "' check");
  }
  if (has("pointwise") && seeds.empty()) throw ConfigError("pointwise check needs seeds");
  if ((has("refute-strict") || has("verify-alr")) && !s.phi) throw ConfigError("this check needs a map phi");
  if (has("refute-strict") && !s.witness_x0) throw ConfigError("refute-strict needs a witness start");

  const Space& space = s.F.space();
  Json report = {{"name", name},          {"system", s.name}, {"epsilon", s.epsilon},
                 {"tol", s.tol},          {"n_max", s.n_max}, {"maps", s.F.size()},
                 {"target_points", s.A.size()}};
  Json actual = Json::object();
  const bool write = !out_dir.empty();

  if (has("pointwise")) {
    log << name << ": pointwise on " << seeds.size() << " seeds\n";
    std::vector<PointwiseReport> reps;
    Json rows = Json::array();
    for (std::size_t k = 0; k < seeds.size(); ++k) {
      reps.push_back(pointwise_test(s.F, seeds[k], s.A, s.n_max, s.tol, s.epsilon));
      const auto& r = reps.back();
      Json row = {{"seed", point_json(seeds[k], space)},
                  {"verdict", to_string(r.verdict)},
                  {"converged_at", r.converged_at},
                  {"final_distance", r.distances.empty() ? 0.0 : r.distances.back()},
                  {"truncated", r.truncated}};
      if (write && outputs.orbits) {
        const std::string file = "orbit_seed" + std::to_string(k) + ".csv";
        write_file(join(out_dir, file), csv_of(r));
        row["orbit_csv"] = file;
      }
      if (write && outputs.point_clouds) {
        const OrbitRecord orbit = iterate_orbit(s.F, CompactSet(space, {seeds[k]}, s.epsilon), s.n_max, s.epsilon);
        for (std::size_t n = 0; n < orbit.steps.size(); ++n) {
          std::ostringstream pc;
          write_point_cloud_csv(pc, orbit.steps[n]);
          write_file(join(out_dir, "orbit_seed" + std::to_string(k) + "_step" + std::to_string(n) + ".csv"), pc.str());
        }
      }
      rows.push_back(std::move(row));
    }
    const Verdict v = aggregate(reps);
    report["pointwise"] = {{"verdict", to_string(v)}, {"seeds", rows}};
    actual["pointwise"] = to_string(v);
  }

  if (has("refute-strict")) {
    log << name << ": strict refutation\n";
    Json j;
    try {
      const WitnessingSequence w =
          witnessing_sequence(*s.phi, *s.witness_x0, *s.witness_repellor, s.witness_length);
      const StrictRefuteReport r = strict_refute(s.F, s.A, w, -1, s.n_max, s.epsilon);
      j = {{"strict_refuted", r.refuted},
           {"x0_distance", r.x0_distance},
           {"min_distance", r.min_distance},
           {"margin_reproduced", std::abs(r.min_distance - r.x0_distance) <= 3.0 * s.epsilon},
           {"tail_start", r.tail_start},
           {"horizon", r.horizon},
           {"witness_max_residual", w.max_residual()},
           {"witness_terminal_distance", w.terminal_distance()},
           {"truncated", r.truncated}};
      if (write && outputs.orbits) {
        std::ostringstream csv;
        csv << "step,distance_to_target,margin\n";
        for (std::size_t n = 0; n < r.distances.size(); ++n)
          csv << n << ',' << format_double(r.distances[n]) << ','
              << (n < r.margins.size() ? format_double(r.margins[n]) : "") << '\n';
        write_file(join(out_dir, "refute.csv"), csv.str());
        j["orbit_csv"] = "refute.csv";
      }
      actual["strict_refuted"] = r.refuted;
    } catch (const WitnessError& e) {
      j = {{"strict_refuted", nullptr}, {"note", e.what()}};
      actual["strict_refuted"] = nullptr;
    }
    report["strict"] = j;
  }

  if (has("verify-alr")) {
    log << name << ": ALR verification\n";
    std::mt19937_64 rng(1);
    std::vector<Point> pts;
    for (int i = 0; i < 200; ++i) pts.push_back(s.phi->space().sample(rng));
    AlrOptions ao;
    ao.witness_start = s.witness_x0;
    const AlrReport r = alr_verify(*s.phi, CompactSet(s.phi->space(), std::move(pts), s.epsilon), ao);
    Json j = {{"passed", r.passed()},
              {"attracting", r.attracting},
              {"attracting_failure", r.attracting_failure},
              {"repellor_found", r.repellor_found},
              {"repellor_note", r.repellor_note}};
    if (r.witness) {
      j["witness_max_residual"] = r.witness->max_residual();
      j["witness_terminal_distance"] = r.witness->terminal_distance();
      j["repellor"] = point_json(r.witness->repellor, s.phi->space());
    }
    report["alr"] = j;
    actual["alr"] = r.passed();
  }

  if (has("fixed-set")) {
    const FixedSetReport r = fixed_set_check(s.F, s.A, s.epsilon);
    report["fixed_set"] = {{"is_fixed", r.is_fixed}, {"defect", r.defect}};
    actual["fixed_set"] = r.is_fixed;
  }

  if (write && outputs.render_format) {
    const Viewport view = default_viewport(s.A);
    const RenderResult img = *outputs.render_format == "pgm" ? render_pgm(s.A, view, outputs.width, outputs.height)
                                                              : render_svg(s.A, view, outputs.width, outputs.height);
    const std::string file = "target." + *outputs.render_format;
    write_file(join(out_dir, file), img.bytes);
    report["render"] = file;
  }

  int code = kExitOk;
  Json rows = Json::array();
  for (const Expectation& e : expectations) {
    const std::string check = e.key;
    std::string status;
    if (actual.at(check).is_null() || actual.at(check) == "inconclusive") {
      status = e.expected == "inconclusive" ? "match" : "inconclusive";
    } else {
      status = actual.at(check) == e.expected ? "match" : "mismatch";
    }
    if (status == "mismatch") code = kExitContrary;
    if (status == "inconclusive" && code == kExitOk) code = kExitInconclusive;
    rows.push_back({{"check", check}, {"expected", e.expected}, {"actual", actual.at(check)}, {"status", status}});
  }
  report["expectations"] = rows;
  report["exit_code"] = code;
  if (write) write_file(join(out_dir, "report.json"), report.dump(2) + "\n");
  return {code, report};
}

}  // namespace ifslab::cli
