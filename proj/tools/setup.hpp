#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ifslab/gallery.hpp"

namespace ifslab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitContrary = 2,
  kExitInconclusive = 3,
  kExitUsage = 64,
  kExitRuntime = 70,
};

/// Malformed or invalid configuration (exit 64).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Values given on the command line; they win over config and preset values.
struct Overrides {
  std::optional<double> epsilon;
  std::optional<double> tol;
  std::optional<int> n_max;
};

/// Everything a subcommand needs about one system.
struct Setup {
  std::string name;
  IfsSystem F;
  CompactSet A;
  std::optional<Map> phi;
  std::optional<Point> witness_x0;
  std::optional<Point> witness_repellor;
  int witness_length = 20;
  double epsilon = 1e-3;
  double tol = 0.02;
  int n_max = 40;
  std::vector<Point> seeds;
  std::optional<Preset> preset;
};

bool known_preset(const std::string& preset_text);

Setup setup_from_preset(const std::string& preset_text, const Overrides& o);

/// Inline system: {"space", "maps": [descriptors], "target": {"region"} or
/// {"points"}, optional "phi" (map index), "witness": {"x0", "repellor",
/// "length"}, "seeds", "epsilon", "tol", "n_max"}.
Setup setup_from_json(const Json& system, const Overrides& o);

/// Preset string, {"preset": "..."} or an inline system.
Setup setup_from_config(const Json& system, const Overrides& o);

/// Number (a real or an angle, by space), [x, y], or "inf".
Point point_from_json_in(const Json& j, const Space& space);
/// "0.5", "0.2,0.3" or "inf".
Point point_from_text(const std::string& text, const Space& space);
Json point_json(const Point& p, const Space& space);

/// Path to an existing directory, creating it when needed; empty for stdout.
std::string resolve_out_dir(const std::string& flag);

void write_file(const std::string& path, const std::string& bytes);

}  // namespace ifslab::cli
