#pragma once

#include <cstddef>
#include <vector>

#include "ifslab/ifs.hpp"

namespace ifslab {

/// grid_snap of the union of f(p) over f in F and p in S, visited by map
/// index then point index.
CompactSet apply_operator(const IfsSystem& F, const CompactSet& S, double eps);

struct OrbitRecord {
  IfsSystem system;
  std::vector<CompactSet> steps;
  /// Hausdorff distance of each step to the system's target (empty when the
  /// system has none).
  std::vector<double> distances;
  double epsilon = 0.0;
  std::size_t point_cap = 0;
  bool truncated = false;

  const CompactSet& initial() const { return steps.front(); }
  const CompactSet& last() const { return steps.back(); }
};

inline constexpr std::size_t kDefaultPointCap = 2'000'000;

/// Steps S0, F(S0), ..., F^n(S0) at fixed resolution eps. Stops early with
/// `truncated` set when the next step would exceed point_cap images.
OrbitRecord iterate_orbit(const IfsSystem& F, const CompactSet& S0, int n, double eps,
                          std::size_t point_cap = kDefaultPointCap);

struct FixedSetReport {
  bool is_fixed = false;
  double defect = 0.0;
};

/// defect = H(F(A), A); A counts as fixed when defect <= 2 eps.
FixedSetReport fixed_set_check(const IfsSystem& F, const CompactSet& A, double eps);

}  // namespace ifslab
