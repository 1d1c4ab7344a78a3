#pragma once

#include <optional>
#include <span>

#include "ifslab/point_set.hpp"

namespace ifslab {

/// Finite-window estimate of the lower and upper Kuratowski limits of a
/// sequence of sets. Either estimate may come back empty (reported as
/// nullopt); Li is genuinely empty for oscillating sequences.
struct LimitEstimate {
  std::optional<CompactSet> li;
  std::optional<CompactSet> ls;
  int tail_window = 0;

  bool li_empty() const { return !li.has_value(); }
  bool ls_empty() const { return !ls.has_value(); }
};

/// Looks at the last `tail_window` sets. A point of the tail belongs to Ls
/// when it is within tol of at least two tail sets and to Li when it is within
/// tol of every tail set. Both estimates are snapped at resolution tol.
LimitEstimate estimate_li_ls(std::span<const CompactSet> orbit, int tail_window, double tol);

}  // namespace ifslab
