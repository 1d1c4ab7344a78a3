#include "ifslab/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "ifslab/parallel.hpp"

namespace ifslab {

CompactSet::CompactSet(Space space, std::vector<Point> points, double resolution)
    : space_(std::move(space)),
      points_(std::make_shared<const std::vector<Point>>(std::move(points))),
      resolution_(resolution) {
  if (points_->empty()) throw Error("compact set approximation must be nonempty");
  if (!(resolution_ > 0.0)) throw Error("compact set resolution must be positive");
}

CompactSet CompactSet::snapped(Space space, std::vector<Point> points, double resolution) {
  if (points.empty()) throw Error("compact set approximation must be nonempty");
  auto kept = grid_snap_points(space, points, resolution);
  return CompactSet(std::move(space), std::move(kept), resolution);
}

CompactSet CompactSet::with_resolution(double eps) const {
  CompactSet copy = *this;
  if (!(eps > 0.0)) throw Error("compact set resolution must be positive");
  copy.resolution_ = eps;
  return copy;
}

namespace {

double periodic_coord(const Space& space, const Point& p) {
  return wrap_angle(space.chart(p));
}

// Cell-bucketed set of kept points, used by the greedy snap.
class SnapGrid {
 public:
  SnapGrid(const Space& space, double eps) : space_(space), radius_(0.5 * eps), cell_(0.5 * eps) {
    // Equal cells around the circle, none narrower than the merge radius.
    if (space_.periodic()) {
      ring_cells_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(kTwoPi / cell_)));
      ring_width_ = kTwoPi / static_cast<double>(ring_cells_);
    }
  }

  bool try_insert(const Point& p) {
    if (space_.dimension() == 1) return try_insert_1d(p);
    return try_insert_2d(p);
  }

  std::vector<Point> take() { return std::move(kept_); }

 private:
  bool near_existing(std::int64_t key, const Point& p) const {
    auto it = head_.find(key);
    if (it == head_.end()) return false;
    for (std::int64_t i = it->second; i >= 0; i = next_[static_cast<std::size_t>(i)])
      if (space_.distance(kept_[static_cast<std::size_t>(i)], p) < radius_) return true;
    return false;
  }

  void insert(std::int64_t key, const Point& p) {
    const auto idx = static_cast<std::int64_t>(kept_.size());
    kept_.push_back(p);
    auto [it, fresh] = head_.try_emplace(key, idx);
    next_.push_back(fresh ? -1 : it->second);
    it->second = idx;
  }

  bool try_insert_1d(const Point& p) {
    std::int64_t k;
    if (space_.periodic()) {
      k = static_cast<std::int64_t>(std::floor(periodic_coord(space_, p) / ring_width_));
      k = std::min(k, ring_cells_ - 1);
      for (std::int64_t d : {-1, 0, 1})
        if (near_existing(((k + d) % ring_cells_ + ring_cells_) % ring_cells_, p)) return false;
    } else {
      const double t = space_.chart(p);
      if (!std::isfinite(t)) throw Error("grid_snap: non-finite coordinate");
      k = static_cast<std::int64_t>(std::floor(t / cell_));
      for (std::int64_t d : {-1, 0, 1})
        if (near_existing(k + d, p)) return false;
    }
    insert(k, p);
    return true;
  }

  static std::int64_t key2(std::int64_t kx, std::int64_t ky) {
    return static_cast<std::int64_t>((static_cast<std::uint64_t>(kx) << 32) ^
                                     (static_cast<std::uint64_t>(ky) & 0xffffffffULL));
  }

  bool try_insert_2d(const Point& p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error("grid_snap: non-finite coordinate");
    const auto kx = static_cast<std::int64_t>(std::floor(p.x / cell_));
    const auto ky = static_cast<std::int64_t>(std::floor(p.y / cell_));
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy)
        if (near_existing(key2(kx + dx, ky + dy), p)) return false;
    insert(key2(kx, ky), p);
    return true;
  }

  const Space& space_;
  double radius_;
  double cell_;
  std::int64_t ring_cells_ = 1;
  double ring_width_ = kTwoPi;
  std::vector<Point> kept_;
  std::vector<std::int64_t> next_;
  std::unordered_map<std::int64_t, std::int64_t> head_;
};

}  // namespace

std::vector<Point> grid_snap_points(const Space& space, std::span<const Point> points, double eps) {
  if (!(eps > 0.0)) throw Error("grid_snap: eps must be positive");
  SnapGrid grid(space, eps);
  for (const Point& p : points) grid.try_insert(p);
  return grid.take();
}

CompactSet grid_snap(const CompactSet& set, double eps) {
  return CompactSet(set.space(), grid_snap_points(set.space(), set.points(), eps), eps);
}

// ---------------------------------------------------------------------------
// PointIndex

PointIndex::PointIndex(const Space& space, std::span<const Point> points)
    : space_(space), points_(points.begin(), points.end()) {
  if (points_.empty()) throw Error("PointIndex: empty point set");
  if (space_.dimension() == 1) {
    sorted_.reserve(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const double t = space_.periodic() ? periodic_coord(space_, points_[i]) : space_.chart(points_[i]);
      sorted_.emplace_back(t, i);
    }
    std::sort(sorted_.begin(), sorted_.end());
    return;
  }
  double x1 = -std::numeric_limits<double>::infinity(), y1 = x1;
  x0_ = y0_ = std::numeric_limits<double>::infinity();
  for (const Point& p : points_) {
    x0_ = std::min(x0_, p.x);
    y0_ = std::min(y0_, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  const double wx = x1 - x0_, wy = y1 - y0_;
  const auto n = static_cast<double>(points_.size());
  if (wx > 0.0 && wy > 0.0)
    cell_ = std::sqrt(wx * wy / n);
  else if (wx > 0.0 || wy > 0.0)
    cell_ = std::max(wx, wy) / n;
  else
    cell_ = 1.0;
  cell_ = std::max(cell_, 1e-12);
  nx_ = static_cast<long>(wx / cell_) + 1;
  ny_ = static_cast<long>(wy / cell_) + 1;
  // Guard against runaway grids on degenerate inputs.
  while (static_cast<double>(nx_) * static_cast<double>(ny_) > 4.0 * n + 16.0) {
    cell_ *= 1.5;
    nx_ = static_cast<long>(wx / cell_) + 1;
    ny_ = static_cast<long>(wy / cell_) + 1;
  }
  const auto cells = static_cast<std::size_t>(nx_ * ny_);
  cell_start_.assign(cells + 1, 0);
  std::vector<std::size_t> cell_of(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const long cx = std::min(nx_ - 1, static_cast<long>((points_[i].x - x0_) / cell_));
    const long cy = std::min(ny_ - 1, static_cast<long>((points_[i].y - y0_) / cell_));
    cell_of[i] = static_cast<std::size_t>(cy * nx_ + cx);
    ++cell_start_[cell_of[i] + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) cell_start_[c + 1] += cell_start_[c];
  cell_items_.resize(points_.size());
  std::vector<std::size_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < points_.size(); ++i) cell_items_[fill[cell_of[i]]++] = i;
}

std::pair<double, std::size_t> PointIndex::nearest(const Point& q) const {
  return space_.dimension() == 1 ? nearest_1d(q) : nearest_2d(q);
}

std::pair<double, std::size_t> PointIndex::nearest_1d(const Point& q) const {
  const double t = space_.periodic() ? periodic_coord(space_, q) : space_.chart(q);
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), std::make_pair(t, std::size_t{0}));
  std::pair<double, std::size_t> best{std::numeric_limits<double>::infinity(), 0};
  auto consider = [&](std::size_t idx) {
    const double d = space_.distance(q, points_[idx]);
    if (d < best.first || (d == best.first && idx < best.second)) best = {d, idx};
  };
  if (it != sorted_.end()) consider(it->second);
  if (it != sorted_.begin()) consider(std::prev(it)->second);
  if (space_.periodic()) {
    consider(sorted_.front().second);
    consider(sorted_.back().second);
  }
  // Equal chart keys can hide further candidates at the same distance; they do
  // not change the distance, only the index, so the scan stops here.
  return best;
}

std::pair<double, std::size_t> PointIndex::nearest_2d(const Point& q) const {
  const long ci = std::clamp(static_cast<long>(std::floor((q.x - x0_) / cell_)), 0L, nx_ - 1);
  const long cj = std::clamp(static_cast<long>(std::floor((q.y - y0_) / cell_)), 0L, ny_ - 1);
  const double bx0 = x0_ + static_cast<double>(ci) * cell_, by0 = y0_ + static_cast<double>(cj) * cell_;
  const double ddx = std::max({bx0 - q.x, 0.0, q.x - (bx0 + cell_)});
  const double ddy = std::max({by0 - q.y, 0.0, q.y - (by0 + cell_)});
  const double offset = std::hypot(ddx, ddy);

  std::pair<double, std::size_t> best{std::numeric_limits<double>::infinity(), 0};
  auto scan = [&](long i, long j) {
    if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return;
    const auto c = static_cast<std::size_t>(j * nx_ + i);
    for (std::size_t k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
      const std::size_t idx = cell_items_[k];
      const double d = space_.distance(q, points_[idx]);
      if (d < best.first || (d == best.first && idx < best.second)) best = {d, idx};
    }
  };
  const long max_r = std::max(nx_, ny_);
  for (long r = 0; r <= max_r; ++r) {
    if (r == 0) {
      scan(ci, cj);
    } else {
      for (long i = ci - r; i <= ci + r; ++i) {
        scan(i, cj - r);
        scan(i, cj + r);
      }
      for (long j = cj - r + 1; j <= cj + r - 1; ++j) {
        scan(ci - r, j);
        scan(ci + r, j);
      }
    }
    if (best.first <= static_cast<double>(r) * cell_ - offset) break;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Hausdorff

namespace {

void require_same_space(const CompactSet& a, const CompactSet& b) {
  if (!a.space().compatible(b.space()))
    throw Error("hausdorff_distance: sets live on different spaces (" + a.space().name() + " vs " +
                b.space().name() + ")");
}

double directed_brute(const CompactSet& a, const CompactSet& b) {
  const auto pa = a.points();
  const auto pb = b.points();
  const Space& sp = a.space();
  std::vector<double> chunk_max(chunk_count(pa.size(), 256), 0.0);
  parallel_chunks(
      pa.size(),
      [&](std::size_t lo, std::size_t hi, std::size_t c) {
        double m = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
          double best = std::numeric_limits<double>::infinity();
          for (const Point& q : pb) best = std::min(best, sp.distance(pa[i], q));
          m = std::max(m, best);
        }
        chunk_max[c] = m;
      },
      256);
  return *std::max_element(chunk_max.begin(), chunk_max.end());
}

double directed_indexed(const CompactSet& a, const PointIndex& index) {
  const auto pa = a.points();
  std::vector<double> chunk_max(chunk_count(pa.size()), 0.0);
  parallel_chunks(pa.size(), [&](std::size_t lo, std::size_t hi, std::size_t c) {
    double m = 0.0;
    for (std::size_t i = lo; i < hi; ++i) m = std::max(m, index.distance(pa[i]));
    chunk_max[c] = m;
  });
  return *std::max_element(chunk_max.begin(), chunk_max.end());
}

constexpr double kBruteForceLimit = 1e6;

}  // namespace

double directed_hausdorff(const CompactSet& a, const CompactSet& b) {
  require_same_space(a, b);
  if (static_cast<double>(a.size()) * static_cast<double>(b.size()) <= kBruteForceLimit)
    return directed_brute(a, b);
  return directed_indexed(a, PointIndex(b.space(), b.points()));
}

double hausdorff_distance_brute(const CompactSet& a, const CompactSet& b) {
  require_same_space(a, b);
  return std::max(directed_brute(a, b), directed_brute(b, a));
}

double hausdorff_distance_indexed(const CompactSet& a, const CompactSet& b) {
  require_same_space(a, b);
  const PointIndex ia(a.space(), a.points());
  const PointIndex ib(b.space(), b.points());
  return std::max(directed_indexed(a, ib), directed_indexed(b, ia));
}

double hausdorff_distance(const CompactSet& a, const CompactSet& b) {
  if (static_cast<double>(a.size()) * static_cast<double>(b.size()) <= kBruteForceLimit)
    return hausdorff_distance_brute(a, b);
  return hausdorff_distance_indexed(a, b);
}

double point_set_distance(const Point& p, const CompactSet& set) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& q : set.points()) best = std::min(best, set.space().distance(p, q));
  return best;
}

CompactSet set_union(const CompactSet& a, const CompactSet& b, double eps) {
  require_same_space(a, b);
  std::vector<Point> all(a.points().begin(), a.points().end());
  all.insert(all.end(), b.points().begin(), b.points().end());
  return CompactSet::snapped(a.space(), std::move(all), eps);
}

}  // namespace ifslab
