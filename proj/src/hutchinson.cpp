#include "ifslab/hutchinson.hpp"

#include <algorithm>
#include <string>

#include "ifslab/parallel.hpp"

namespace ifslab {

IfsSystem::IfsSystem(Space space, std::vector<Map> maps, std::optional<CompactSet> target)
    : space_(std::move(space)), maps_(std::move(maps)), target_(std::move(target)) {
  if (maps_.empty()) throw Error("IfsSystem: needs at least one map");
  for (const Map& m : maps_)
    if (!m.space().compatible(space_))
      throw Error("IfsSystem: map '" + m.label() + "' lives on " + m.space().name() + ", not " + space_.name());
  if (target_ && !target_->space().compatible(space_)) throw Error("IfsSystem: target on a different space");
}

IfsSystem IfsSystem::with_target(CompactSet target) const { return IfsSystem(space_, maps_, std::move(target)); }

IfsSystem IfsSystem::with_map(Map map) const {
  auto maps = maps_;
  maps.push_back(std::move(map));
  return IfsSystem(space_, std::move(maps), target_);
}

IfsSystem IfsSystem::with_first(std::size_t i) const {
  if (i >= maps_.size()) throw Error("IfsSystem::with_first: index out of range");
  auto maps = maps_;
  std::rotate(maps.begin(), maps.begin() + static_cast<std::ptrdiff_t>(i), maps.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  return IfsSystem(space_, std::move(maps), target_);
}

std::string IfsSystem::label() const {
  std::string out = "{";
  for (std::size_t i = 0; i < maps_.size(); ++i) out += (i ? ", " : "") + maps_[i].label();
  return out + "}";
}

CompactSet apply_operator(const IfsSystem& F, const CompactSet& S, double eps) {
  if (!(eps > 0.0)) throw Error("apply_operator: eps must be positive");
  if (!S.space().compatible(F.space()))
    throw Error("apply_operator: set lives on " + S.space().name() + ", system on " + F.space().name());
  const std::size_t n = S.size();
  const std::size_t total = F.size() * n;
  std::vector<Point> images(total);
  const auto pts = S.points();
  parallel_chunks(total, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t k = b; k < e; ++k) images[k] = F[k / n](pts[k % n]);
  });
  return CompactSet(F.space(), grid_snap_points(F.space(), images, eps), eps);
}

OrbitRecord iterate_orbit(const IfsSystem& F, const CompactSet& S0, int n, double eps, std::size_t point_cap) {
  if (n < 1) throw Error("iterate_orbit: n must be at least 1");
  if (!(eps > 0.0)) throw Error("iterate_orbit: eps must be positive");
  OrbitRecord rec{F, {}, {}, eps, point_cap, false};
  rec.steps.reserve(static_cast<std::size_t>(n) + 1);
  rec.steps.push_back(S0);
  const auto& target = F.target();
  if (target) rec.distances.push_back(hausdorff_distance(S0, *target));
  for (int k = 0; k < n; ++k) {
    if (rec.steps.back().size() * F.size() > point_cap) {
      rec.truncated = true;
      break;
    }
    rec.steps.push_back(apply_operator(F, rec.steps.back(), eps));
    if (target) rec.distances.push_back(hausdorff_distance(rec.steps.back(), *target));
  }
  return rec;
}

FixedSetReport fixed_set_check(const IfsSystem& F, const CompactSet& A, double eps) {
  const double defect = hausdorff_distance(apply_operator(F, A, eps), A);
  return {defect <= 2.0 * eps, defect};
}

}  // namespace ifslab
