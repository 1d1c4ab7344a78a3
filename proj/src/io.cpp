#include "ifslab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace ifslab {

namespace {

// Plane position of a point for drawing; nullopt for the point at infinity.
std::optional<std::pair<double, double>> plane_xy(const Space& space, const Point& p) {
  if (p.at_infinity) return std::nullopt;
  if (space.kind() == SpaceKind::Circle) return std::pair{std::cos(p.x), std::sin(p.x)};
  return std::pair{p.x, p.y};
}

bool drawn_as_line(const Space& space) { return space.dimension() == 1 && space.kind() != SpaceKind::Circle; }

std::vector<std::pair<double, double>> drawable(const CompactSet& set) {
  std::vector<std::pair<double, double>> out;
  for (const Point& p : set.points())
    if (auto xy = plane_xy(set.space(), p)) out.push_back(*xy);
  std::sort(out.begin(), out.end());
  return out;
}

void check_size(int width, int height) {
  if (width < 1 || height < 1 || width > 20000 || height > 20000)
    throw Error("render: image size must be between 1 and 20000 pixels");
}

void check_view(const Viewport& v, bool line) {
  if (!(v.x_hi > v.x_lo) || (!line && !(v.y_hi > v.y_lo))) throw Error("render: empty viewport");
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_orbit_csv(std::ostream& out, std::span<const std::size_t> point_counts, std::span<const double> distances) {
  out << "step,point_count,distance_to_target\n";
  for (std::size_t k = 0; k < point_counts.size(); ++k) {
    out << k << ',' << point_counts[k] << ',';
    if (k < distances.size()) out << format_double(distances[k]);
    out << '\n';
  }
}

void write_orbit_csv(std::ostream& out, const OrbitRecord& orbit) {
  std::vector<std::size_t> counts;
  for (const CompactSet& s : orbit.steps) counts.push_back(s.size());
  write_orbit_csv(out, counts, orbit.distances);
}

void write_point_cloud_csv(std::ostream& out, const CompactSet& set) {
  const bool two = set.space().dimension() == 2;
  out << "# epsilon=" << format_double(set.resolution()) << '\n';
  out << (two ? "x,y,flag\n" : "x,flag\n");
  for (const Point& p : set.points()) {
    if (p.at_infinity) {
      out << (two ? "inf,inf,1\n" : "inf,1\n");
      continue;
    }
    out << format_double(p.x);
    if (two) out << ',' << format_double(p.y);
    out << ",0\n";
  }
}

namespace {

double parse_number(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) throw Error("point cloud: bad number '" + text + "'");
  return v;
}

}  // namespace

CompactSet read_point_cloud_csv(std::istream& in, const Space& space) {
  std::string line;
  double eps = 0.0;
  bool header = false;
  std::vector<Point> pts;
  const bool two = space.dimension() == 2;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# epsilon=", 0) == 0) {
      eps = parse_number(line.substr(10));
      continue;
    }
    if (line[0] == '#') continue;
    if (!header) {
      header = true;
      if (line != (two ? "x,y,flag" : "x,flag")) throw Error("point cloud: unexpected header '" + line + "'");
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (cells.size() != (two ? 3u : 2u)) throw Error("point cloud: bad row '" + line + "'");
    if (cells.back() == "1") {
      pts.push_back(Point::infinity());
    } else if (two) {
      pts.push_back(Point::plane(parse_number(cells[0]), parse_number(cells[1])));
    } else {
      const double x = parse_number(cells[0]);
      pts.push_back(space.kind() == SpaceKind::Circle ? Point::angle(x) : Point::real(x));
    }
  }
  if (!(eps > 0.0)) throw Error("point cloud: missing '# epsilon=' line");
  if (pts.empty()) throw Error("point cloud: no points");
  return CompactSet(space, std::move(pts), eps);
}

Viewport default_viewport(const CompactSet& set) {
  const auto pts = drawable(set);
  if (pts.empty()) return {};
  double x_lo = pts.front().first, x_hi = x_lo, y_lo = pts.front().second, y_hi = y_lo;
  for (const auto& [x, y] : pts) {
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
    y_lo = std::min(y_lo, y);
    y_hi = std::max(y_hi, y);
  }
  const double pad = 0.05 * std::max({x_hi - x_lo, y_hi - y_lo, 1e-9});
  return {x_lo - pad, x_hi + pad, y_lo - pad, y_hi + pad};
}

RenderResult render_pgm(const CompactSet& set, const Viewport& view, int width, int height) {
  check_size(width, height);
  const bool line = drawn_as_line(set.space());
  check_view(view, line);
  const auto w = static_cast<std::size_t>(width), h = static_cast<std::size_t>(height);
  std::vector<unsigned char> px(w * h, 0);
  RenderResult res;
  for (const auto& [x, y] : drawable(set)) {
    const double fx = (x - view.x_lo) / (view.x_hi - view.x_lo);
    if (fx < 0.0 || fx > 1.0) continue;
    const auto col = std::min(w - 1, static_cast<std::size_t>(fx * static_cast<double>(w)));
    if (line) {
      for (std::size_t r = 0; r < h; ++r) px[r * w + col] = 255;
    } else {
      const double fy = (y - view.y_lo) / (view.y_hi - view.y_lo);
      if (fy < 0.0 || fy > 1.0) continue;
      const auto row = h - 1 - std::min(h - 1, static_cast<std::size_t>(fy * static_cast<double>(h)));
      px[row * w + col] = 255;
    }
    ++res.drawn;
  }
  res.bytes = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  res.bytes.append(px.begin(), px.end());
  return res;
}

RenderResult render_svg(const CompactSet& set, const Viewport& view, int width, int height) {
  check_size(width, height);
  const bool line = drawn_as_line(set.space());
  check_view(view, line);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"black\"/>\n";
  RenderResult res;
  char buf[160];
  for (const auto& [x, y] : drawable(set)) {
    const double fx = (x - view.x_lo) / (view.x_hi - view.x_lo);
    if (fx < 0.0 || fx > 1.0) continue;
    const double sx = fx * width;
    if (line) {
      std::snprintf(buf, sizeof buf, "<line x1=\"%.4f\" y1=\"0\" x2=\"%.4f\" y2=\"%d\" stroke=\"white\" stroke-width=\"1\"/>\n",
                    sx, sx, height);
    } else {
      const double fy = (y - view.y_lo) / (view.y_hi - view.y_lo);
      if (fy < 0.0 || fy > 1.0) continue;
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.4f\" cy=\"%.4f\" r=\"0.5\" fill=\"white\"/>\n", sx,
                    (1.0 - fy) * height);
    }
    out << buf;
    ++res.drawn;
  }
  out << "</svg>\n";
  res.bytes = out.str();
  return res;
}

}  // namespace ifslab
