#include "ifslab/limits.hpp"

#include <string>
#include <vector>

namespace ifslab {

LimitEstimate estimate_li_ls(std::span<const CompactSet> orbit, int tail_window, double tol) {
  if (tail_window < 2) throw Error("estimate_li_ls: tail window must be at least 2");
  if (static_cast<std::size_t>(tail_window) > orbit.size())
    throw Error("estimate_li_ls: tail window " + std::to_string(tail_window) + " longer than orbit of length " +
                std::to_string(orbit.size()));
  if (!(tol > 0.0)) throw Error("estimate_li_ls: tol must be positive");

  const auto tail = orbit.subspan(orbit.size() - static_cast<std::size_t>(tail_window));
  const Space& space = tail.front().space();
  std::vector<PointIndex> index;
  index.reserve(tail.size());
  for (const CompactSet& s : tail) {
    if (!s.space().compatible(space)) throw Error("estimate_li_ls: orbit mixes spaces");
    index.emplace_back(s.space(), s.points());
  }

  std::vector<Point> li_pts, ls_pts;
  for (const CompactSet& s : tail) {
    for (const Point& p : s.points()) {
      int hits = 0;
      for (const PointIndex& idx : index)
        if (idx.distance(p) <= tol) ++hits;
      if (hits >= 2) ls_pts.push_back(p);
      if (hits == tail_window) li_pts.push_back(p);
    }
  }

  LimitEstimate est;
  est.tail_window = tail_window;
  if (!li_pts.empty()) est.li = CompactSet::snapped(space, std::move(li_pts), tol);
  if (!ls_pts.empty()) est.ls = CompactSet::snapped(space, std::move(ls_pts), tol);
  return est;
}

}  // namespace ifslab
