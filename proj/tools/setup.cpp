#include "setup.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "ifslab/serialize.hpp"

namespace ifslab::cli {

namespace {

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(what) + " must be positive");
}

template <class T>
T typed(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(std::string("field '") + key + "' has the wrong type");
  }
}

void apply(Setup& s, const Json& j, const Overrides& o) {
  s.epsilon = o.epsilon.value_or(typed(j, "epsilon", s.epsilon));
  s.tol = o.tol.value_or(typed(j, "tol", s.tol));
  s.n_max = o.n_max.value_or(typed(j, "n_max", s.n_max));
  check_positive(s.epsilon, "epsilon");
  check_positive(s.tol, "tol");
  if (s.n_max < 1) throw ConfigError("n_max must be at least 1");
}

}  // namespace

bool known_preset(const std::string& preset_text) {
  const std::string name = preset_text.substr(0, preset_text.find(':'));
  return name == "cantor" || name == "sierpinski-triangle" || name == "sierpinski-carpet" || name == "kwietniak" ||
         name == "circle" || name == "line";
}

Setup setup_from_preset(const std::string& preset_text, const Overrides& o) {
  if (!known_preset(preset_text)) throw ConfigError("unknown preset '" + preset_text + "'");
  Preset p = [&] {
    try {
      return make_preset(preset_text, o.epsilon);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }();
  Setup s{p.name,  p.system, *p.system.target(), p.phi, p.witness_x0, p.witness_repellor, p.witness_length,
          p.epsilon, p.tol,  p.n_max,            p.seeds, p};
  apply(s, Json::object(), o);
  return s;
}

Setup setup_from_json(const Json& j, const Overrides& o) {
  if (!j.is_object()) throw ConfigError("system must be a JSON object");
  for (const char* key : {"space", "maps", "target"})
    if (!j.contains(key)) throw ConfigError(std::string("inline system is missing '") + key + "'");
  const double eps = o.epsilon.value_or(typed(j, "epsilon", 1e-3));
  check_positive(eps, "epsilon");
  try {
    const Space space = space_from_json(j.at("space"));
    if (!j.at("maps").is_array() || j.at("maps").empty()) throw ConfigError("'maps' must be a nonempty array");
    std::vector<Map> maps;
    for (const Json& m : j.at("maps")) maps.push_back(map_from_json(m));
    const Json& t = j.at("target");
    std::optional<CompactSet> A;
    if (t.contains("region")) {
      A = epsilon_net(space, region_from_json(t.at("region")), eps);
    } else if (t.contains("points") && t.at("points").is_array() && !t.at("points").empty()) {
      std::vector<Point> pts;
      for (const Json& p : t.at("points")) pts.push_back(point_from_json_in(p, space));
      A = CompactSet::snapped(space, std::move(pts), eps);
    } else {
      throw ConfigError("target needs a 'region' or a nonempty 'points' list");
    }
    Setup s{j.value("name", std::string("inline")), IfsSystem(space, std::move(maps), *A), *A, {}, {}, {}, 20, eps, 0.02, 40, {}, {}};
    if (j.contains("phi")) {
      const int k = typed(j, "phi", -1);
      if (k < 0 || static_cast<std::size_t>(k) >= s.F.size()) throw ConfigError("'phi' is not a map index");
      s.phi = s.F[static_cast<std::size_t>(k)];
    }
    if (j.contains("witness")) {
      const Json& w = j.at("witness");
      if (!w.contains("x0") || !w.contains("repellor")) throw ConfigError("witness needs 'x0' and 'repellor'");
      s.witness_x0 = point_from_json_in(w.at("x0"), space);
      s.witness_repellor = point_from_json_in(w.at("repellor"), space);
      s.witness_length = typed(w, "length", 20);
    }
    apply(s, j, o);
    return s;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid system: ") + e.what());
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("invalid system: ") + e.what());
  }
}

Setup setup_from_config(const Json& system, const Overrides& o) {
  if (system.is_string()) return setup_from_preset(system.get<std::string>(), o);
  if (system.is_object() && system.contains("preset")) {
    if (!system.at("preset").is_string()) throw ConfigError("'preset' must be a string");
    Setup s = setup_from_preset(system.at("preset").get<std::string>(), o);
    apply(s, system, o);
    return s;
  }
  return setup_from_json(system, o);
}

Point point_from_json_in(const Json& j, const Space& space) {
  if (j.is_number()) {
    const double v = j.get<double>();
    return space.kind() == SpaceKind::Circle ? Point::angle(v) : Point::real(v);
  }
  try {
    return point_from_json(j);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

Point point_from_text(const std::string& text, const Space& space) {
  if (text == "inf") return Point::infinity();
  try {
    const auto comma = text.find(',');
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return space.kind() == SpaceKind::Circle ? Point::angle(v) : Point::real(v);
    }
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    const double x = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const double y = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return Point::plane(x, y);
  } catch (const std::logic_error&) {
    throw ConfigError("cannot read a point from '" + text + "'");
  }
}

Json point_json(const Point& p, const Space& space) { return point_to_json(p, space.dimension()); }

std::string resolve_out_dir(const std::string& flag) {
  std::string dir = flag;
  if (dir.empty())
    if (const char* env = std::getenv("IFSLAB_OUT_DIR")) dir = env;
  if (dir.empty()) return dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir + "': " + ec.message());
  return dir;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << bytes;
  if (!f) throw Error("write to '" + path + "' failed");
}

}  // namespace ifslab::cli
