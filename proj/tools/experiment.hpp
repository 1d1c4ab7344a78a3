#pragma once

#include <iosfwd>
#include <string>

#include "setup.hpp"

namespace ifslab::cli {

struct ExperimentResult {
  int exit_code = kExitOk;
  /// The classification report also written to report.json.
  Json report;
};

/// Reads and parses a config file; malformed JSON raises ConfigError.
Json load_config(const std::string& path);

/// Runs one experiment config and writes its artifacts into out_dir (nothing
/// is written when out_dir is empty).
///
/// Config fields: "name", "system" (preset string, {"preset": ...} or an
/// inline system), "epsilon", "tol", "n_max", "seeds" (list of points or
/// omitted for the preset's seeds), "seed_count", "checks" (any of
/// "pointwise", "refute-strict", "verify-alr", "fixed-set"), "expect"
/// ({"pointwise": verdict, "strict_refuted": bool, "alr": bool,
/// "fixed_set": bool}) and "outputs" ({"orbits": bool, "point_clouds": bool,
/// "render": {"format", "width", "height"}}).
ExperimentResult run_experiment(const Json& config, const Overrides& o, const std::string& out_dir, std::ostream& log);

}  // namespace ifslab::cli
