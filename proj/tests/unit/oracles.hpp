#pragma once

// Independent reference computations shared by the unit tests. None of these
// call into the library's algorithms; they only use Point for convenience.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "ifslab/space.hpp"

namespace oracle {

inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Endpoints of the 2^k intervals of the k-th Cantor construction step.
inline std::vector<std::pair<double, double>> cantor_intervals(int k) {
  std::vector<std::pair<double, double>> iv{{0.0, 1.0}};
  for (int d = 0; d < k; ++d) {
    std::vector<std::pair<double, double>> next;
    for (auto [a, b] : iv) {
      const double t = (b - a) / 3.0;
      next.push_back({a, a + t});
      next.push_back({b - t, b});
    }
    iv = std::move(next);
  }
  return iv;
}

inline std::vector<double> cantor_endpoints(int k) {
  std::vector<double> out;
  for (auto [a, b] : cantor_intervals(k)) {
    out.push_back(a);
    out.push_back(b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Distance from x to a sorted list of reals by scanning.
inline double dist_to_sorted(double x, const std::vector<double>& s) {
  double best = std::numeric_limits<double>::infinity();
  for (double v : s) best = std::min(best, std::fabs(x - v));
  return best;
}

/// Brute-force Hausdorff distance between two planar or real clouds.
inline double hausdorff(const std::vector<ifslab::Point>& a, const std::vector<ifslab::Point>& b) {
  auto directed = [](const auto& p, const auto& q) {
    double worst = 0.0;
    for (const auto& x : p) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& y : q) best = std::min(best, std::hypot(x.x - y.x, x.y - y.y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

/// Square-variant ALR on [a, b] written out directly.
inline double square_alr(double x, double a, double b) {
  if (x <= a || x >= b) return x;
  return (x - a) * (x - a) / (b - a) + a;
}

/// Disc ALR from its chord description: lower end a, upper end b of the
/// vertical chord through z, and phi(z) = |(z - a)/(b - a)| (z - a) + a.
inline ifslab::Point disc_alr(const ifslab::Point& z) {
  const double h = std::sqrt(std::max(0.0, 1.0 - z.x * z.x));
  if (h == 0.0) return z;
  const double t = std::fabs((z.y + h) / (2.0 * h));
  return ifslab::Point::plane(z.x, t * (z.y + h) - h);
}

/// Closed form of the n-th iterate with exponent e(n).
inline ifslab::Point disc_closed_form(const ifslab::Point& z, double exponent) {
  const double h = std::sqrt(1.0 - z.x * z.x);
  const double t = std::fabs((z.y + h) / (2.0 * h));
  return ifslab::Point::plane(z.x, std::pow(t, exponent) * (z.y + h) - h);
}

/// Points of the level-k carpet construction (cell centres) or its corners.
inline std::vector<ifslab::Point> carpet_cell_corners(int k) {
  std::vector<std::pair<double, double>> cells{{0.0, 0.0}};
  double size = 1.0;
  for (int d = 0; d < k; ++d) {
    size /= 3.0;
    std::vector<std::pair<double, double>> next;
    for (auto [x, y] : cells)
      for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
          if (i != 1 || j != 1) next.push_back({x + i * size, y + j * size});
    cells = std::move(next);
  }
  std::vector<ifslab::Point> out;
  for (auto [x, y] : cells) {
    out.push_back(ifslab::Point::plane(x, y));
    out.push_back(ifslab::Point::plane(x + size, y));
    out.push_back(ifslab::Point::plane(x, y + size));
    out.push_back(ifslab::Point::plane(x + size, y + size));
  }
  return out;
}

/// Lower-left corners and side of the level-k carpet cells.
inline std::vector<std::pair<double, double>> carpet_cells(int k, double& size) {
  std::vector<std::pair<double, double>> cells{{0.0, 0.0}};
  size = 1.0;
  for (int d = 0; d < k; ++d) {
    size /= 3.0;
    std::vector<std::pair<double, double>> next;
    for (auto [x, y] : cells)
      for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
          if (i != 1 || j != 1) next.push_back({x + i * size, y + j * size});
    cells = std::move(next);
  }
  return cells;
}

/// Distance from p to the union of the level-k carpet cells (closed squares),
/// an upper bound construction for d(p, carpet) that converges as k grows.
inline double dist_to_carpet_cells(double px, double py, int k) {
  double size = 0.0;
  const auto cells = carpet_cells(k, size);
  double best = std::numeric_limits<double>::infinity();
  for (auto [x, y] : cells) {
    const double dx = std::max({x - px, 0.0, px - (x + size)});
    const double dy = std::max({y - py, 0.0, py - (y + size)});
    best = std::min(best, std::hypot(dx, dy));
  }
  return best;
}

}  // namespace oracle
