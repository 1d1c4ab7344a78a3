#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ifslab/hutchinson.hpp"
#include "ifslab/maps.hpp"

namespace ifslab {

/// Backward orbit x_0, x_1, ..., x_N with phi(x_{k+1}) = x_k up to tol.
struct WitnessingSequence {
  Map map;
  std::vector<Point> points;
  Point repellor;
  /// residuals[k] = d(phi(x_{k+1}), x_k).
  std::vector<double> residuals;
  double tol = 0.0;
  /// Whether x_N reached the requested convergence radius.
  bool converged = false;

  std::size_t length() const { return points.empty() ? 0 : points.size() - 1; }
  double max_residual() const;
  double terminal_distance() const;
  double distance_to_repellor(std::size_t k) const;
};

/// Raised when a preimage cannot be found; carries the sequence built so far.
class WitnessError : public Error {
 public:
  WitnessError(const std::string& what, std::vector<Point> partial, int step)
      : Error(what), partial_(std::move(partial)), step_(step) {}
  const std::vector<Point>& partial() const { return partial_; }
  int step() const { return step_; }

 private:
  std::vector<Point> partial_;
  int step_;
};

/// Builds `length` backward steps from x0. Uses a monotone branch whose
/// domain contains the repellor when the map declares one, else the map's
/// explicit inverse.
WitnessingSequence witnessing_sequence(const Map& phi, const Point& x0, const Point& repellor, int length,
                                       double tol = 1e-10, double convergence_radius = 1e-2);

struct AlrReport {
  bool attracting = false;
  std::string attracting_failure;
  /// Approximate orbit limit per sample.
  std::vector<Point> limits;
  bool repellor_found = false;
  std::string repellor_note;
  std::optional<WitnessingSequence> witness;

  bool passed() const { return attracting && repellor_found; }
};

struct AlrOptions {
  int n_max = 100000;
  double tol = 1e-9;
  int witness_length = 20;
  double witness_tol = 1e-10;
  double convergence_radius = 1e-2;
  /// Start of the witnessing sequence; chosen automatically when absent.
  std::optional<Point> witness_start;
};

/// Checks that every sample orbit is Cauchy with a fixed limit and searches
/// for a local repellor with a witnessing sequence.
AlrReport alr_verify(const Map& phi, const CompactSet& samples, const AlrOptions& opts = {});

struct StrictRefuteReport {
  bool refuted = false;
  int tail_start = 0;
  /// Last step examined: min(n_max, last index where consecutive witness
  /// points are still eps/2 apart).
  int horizon = 0;
  std::size_t witness_map_index = 0;
  double x0_distance = 0.0;
  /// d_n = H(F^n(K), A) for n = 0..horizon.
  std::vector<double> distances;
  /// m_n = d(x0, F^n(K)).
  std::vector<double> margins;
  /// min of d_n over [tail_start, horizon].
  double min_distance = 0.0;
  std::optional<CompactSet> K;
  bool truncated = false;
};

/// Iterates F on K = {repellor} + witness tail and reports whether the orbit
/// stays at least d(x0, A) - 3 eps away from A. tail_start < 0 picks the
/// smallest n after which every witness point is within 10 eps of the
/// repellor.
StrictRefuteReport strict_refute(const IfsSystem& F, const CompactSet& A, const WitnessingSequence& witness,
                                 int tail_start, int n_max, double eps);

enum class Verdict { Converged, Diverged, Inconclusive };
std::string to_string(Verdict v);

struct PointwiseReport {
  Verdict verdict = Verdict::Inconclusive;
  /// First step of the 5-step run below tol, or -1.
  int converged_at = -1;
  std::vector<double> distances;
  /// Size of each orbit step.
  std::vector<std::size_t> point_counts;
  bool truncated = false;
};

inline constexpr int kPersistence = 5;

/// Iterates F^n({x}) and compares with A: converged when the Hausdorff
/// distance stays below tol for 5 consecutive steps; diverged when the tail's
/// Ls estimate has a point farther than max(3 eps, tol) from A or the
/// distance ends above twice its running minimum on a nondecreasing tail.
PointwiseReport pointwise_test(const IfsSystem& F, const Point& x, const CompactSet& A, int n_max, double tol,
                               double eps);

struct SqueezeReport {
  bool holds = true;
  int first_violation = -1;
  std::string detail;
};

/// With F = W + {phi}: checks W^n(x) within eps of F^n(x), and every point
/// of F^n(x) either fixed by phi or within eps of phi^n(x), for n <= n_max.
/// Throws when W(X) is not inside Fix(phi) on 1000 samples.
SqueezeReport squeeze_check(const IfsSystem& W, const Map& phi, const Point& x, int n_max, double eps);

struct RetractPart {
  CompactSet a_net;
  Map retraction;
  IfsSystem w;
};

/// The family {w o r_k : w in W_k, k}, targeting the union of the A_k.
IfsSystem build_retract_ifs(const std::vector<RetractPart>& parts, double eps, std::size_t samples = 1000);

}  // namespace ifslab
