#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "ifslab/gallery.hpp"
#include "ifslab/io.hpp"
#include "ifslab/limits.hpp"
#include "ifslab/parallel.hpp"
#include "ifslab/serialize.hpp"

namespace py = pybind11;
using namespace ifslab;

namespace {

Region region_arg(const std::string& json) { return region_from_json(Json::parse(json)); }

CompactSet make_set(const Space& space, const std::vector<Point>& pts, double eps, bool snap) {
  return snap ? CompactSet::snapped(space, pts, eps) : CompactSet(space, pts, eps);
}

py::dict pointwise_dict(const PointwiseReport& r) {
  py::dict d;
  d["verdict"] = to_string(r.verdict);
  d["converged_at"] = r.converged_at;
  d["distances"] = r.distances;
  d["point_counts"] = r.point_counts;
  d["truncated"] = r.truncated;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Set-valued iteration of function systems and attractor classification";

  py::register_exception<Error>(m, "IfslabError", PyExc_RuntimeError);

  py::class_<Point>(m, "Point")
      .def_static("real", &Point::real)
      .def_static("plane", &Point::plane)
      .def_static("angle", &Point::angle)
      .def_static("infinity", &Point::infinity)
      .def_readonly("x", &Point::x)
      .def_readonly("y", &Point::y)
      .def_readonly("at_infinity", &Point::at_infinity)
      .def("__eq__", [](const Point& a, const Point& b) { return a == b; })
      .def("__repr__", [](const Point& p) {
        if (p.at_infinity) return std::string("Point(inf)");
        std::ostringstream s;
        s << "Point(" << format_double(p.x) << ", " << format_double(p.y) << ")";
        return s.str();
      });

  py::class_<Space>(m, "Space")
      .def_static("real_line", &Space::real_line)
      .def_static("real_interval", &Space::real_interval)
      .def_static("compactified_line", &Space::compactified_line)
      .def_static("circle", &Space::circle)
      .def_static("unit_disc", &Space::unit_disc)
      .def_static("plane", [] { return Space::plane(); })
      .def_static("from_json", [](const std::string& j) { return space_from_json(Json::parse(j)); })
      .def("distance", &Space::distance)
      .def("chart", &Space::chart)
      .def_property_readonly("name", &Space::name)
      .def_property_readonly("dimension", &Space::dimension);

  py::class_<CompactSet>(m, "CompactSet")
      .def(py::init(&make_set), py::arg("space"), py::arg("points"), py::arg("eps"), py::arg("snap") = false)
      .def_property_readonly("space", &CompactSet::space)
      .def_property_readonly("resolution", &CompactSet::resolution)
      .def("points", [](const CompactSet& s) { return std::vector<Point>(s.points().begin(), s.points().end()); })
      .def("__len__", &CompactSet::size);

  m.def("hausdorff_distance", &hausdorff_distance);
  m.def("directed_hausdorff", &directed_hausdorff);
  m.def("grid_snap", &grid_snap);
  m.def("point_set_distance", &point_set_distance);
  m.def(
      "epsilon_net", [](const Space& s, const std::string& region, double eps) { return epsilon_net(s, region_arg(region), eps); },
      py::arg("space"), py::arg("region_json"), py::arg("eps"));
  m.def(
      "estimate_li_ls",
      [](const std::vector<CompactSet>& orbit, int window, double tol) {
        const LimitEstimate e = estimate_li_ls(orbit, window, tol);
        return std::make_pair(e.li, e.ls);
      },
      "Returns (Li, Ls); either is None when the estimate is empty.");

  py::class_<Map>(m, "Map")
      .def(py::init([](const Space& s, std::function<Point(const Point&)> f, std::string label) {
             return Map(s, std::move(f), std::move(label));
           }),
           py::arg("space"), py::arg("fn"), py::arg("label") = "python")
      .def("__call__", &Map::operator())
      .def_property_readonly("label", &Map::label)
      .def_property_readonly("space", &Map::space)
      .def("to_json", [](const Map& f) { return map_to_json(f).dump(); })
      .def_static("from_json", [](const std::string& j) { return map_from_json(Json::parse(j)); });

  m.def("make_identity", &make_identity);
  m.def("make_constant", &make_constant);
  m.def("make_affine", &make_affine);
  m.def("make_rotation", &make_rotation);
  m.def("make_interval_alr", [](double a, double b, const std::string& variant) {
    return make_interval_alr(a, b, alr_variant_from_string(variant));
  }, py::arg("a"), py::arg("b"), py::arg("variant") = "square");
  m.def("make_arc_alr", &make_arc_alr);
  m.def("make_disc_alr", &make_disc_alr);
  m.def("make_kwietniak_map", &make_kwietniak_map);
  m.def("make_retraction", [](const Space& s, const std::string& region) { return make_retraction(s, region_arg(region)); });
  m.def("compose", &compose);

  py::class_<IfsSystem>(m, "IfsSystem")
      .def(py::init<Space, std::vector<Map>, std::optional<CompactSet>>(), py::arg("space"), py::arg("maps"),
           py::arg("target") = std::nullopt)
      .def_property_readonly("maps", &IfsSystem::maps)
      .def_property_readonly("target", &IfsSystem::target)
      .def("__len__", &IfsSystem::size);

  m.def("apply_operator", &apply_operator);
  m.def(
      "iterate_orbit",
      [](const IfsSystem& F, const CompactSet& S0, int n, double eps) {
        const OrbitRecord r = iterate_orbit(F, S0, n, eps);
        return py::make_tuple(r.steps, r.distances, r.truncated);
      },
      "Returns (steps, distances_to_target, truncated).");
  m.def("fixed_set_check", [](const IfsSystem& F, const CompactSet& A, double eps) {
    const FixedSetReport r = fixed_set_check(F, A, eps);
    return py::make_tuple(r.is_fixed, r.defect);
  });
  m.def("pointwise_test", [](const IfsSystem& F, const Point& x, const CompactSet& A, int n_max, double tol, double eps) {
    return pointwise_dict(pointwise_test(F, x, A, n_max, tol, eps));
  });

  py::class_<WitnessingSequence>(m, "WitnessingSequence")
      .def_readonly("points", &WitnessingSequence::points)
      .def_readonly("repellor", &WitnessingSequence::repellor)
      .def_readonly("converged", &WitnessingSequence::converged)
      .def_property_readonly("max_residual", &WitnessingSequence::max_residual)
      .def_property_readonly("terminal_distance", &WitnessingSequence::terminal_distance);
  m.def("witnessing_sequence", &witnessing_sequence, py::arg("phi"), py::arg("x0"), py::arg("repellor"),
        py::arg("length"), py::arg("tol") = 1e-10, py::arg("convergence_radius") = 1e-2);
  m.def("alr_verify", [](const Map& phi, const CompactSet& samples) {
    const AlrReport r = alr_verify(phi, samples);
    py::dict d;
    d["passed"] = r.passed();
    d["attracting"] = r.attracting;
    d["repellor_found"] = r.repellor_found;
    d["note"] = r.attracting_failure.empty() ? r.repellor_note : r.attracting_failure;
    d["witness"] = r.witness;
    return d;
  });
  m.def(
      "strict_refute",
      [](const IfsSystem& F, const CompactSet& A, const WitnessingSequence& w, int tail_start, int n_max, double eps) {
        const StrictRefuteReport r = strict_refute(F, A, w, tail_start, n_max, eps);
        py::dict d;
        d["refuted"] = r.refuted;
        d["tail_start"] = r.tail_start;
        d["horizon"] = r.horizon;
        d["x0_distance"] = r.x0_distance;
        d["min_distance"] = r.min_distance;
        d["distances"] = r.distances;
        return d;
      },
      py::arg("F"), py::arg("A"), py::arg("witness"), py::arg("tail_start") = -1, py::arg("n_max") = 40,
      py::arg("eps") = 1e-3);

  py::class_<Preset>(m, "Preset")
      .def_readonly("name", &Preset::name)
      .def_readonly("system", &Preset::system)
      .def_readonly("phi", &Preset::phi)
      .def_readonly("witness_x0", &Preset::witness_x0)
      .def_readonly("witness_repellor", &Preset::witness_repellor)
      .def_readonly("witness_length", &Preset::witness_length)
      .def_readonly("epsilon", &Preset::epsilon)
      .def_readonly("tol", &Preset::tol)
      .def_readonly("n_max", &Preset::n_max)
      .def_readonly("seeds", &Preset::seeds);
  m.def("make_preset", &make_preset, py::arg("name"), py::arg("epsilon") = std::nullopt);
  m.def("preset_names", &preset_names);
  m.def(
      "gap_address",
      [](const std::string& fractal, const Point& x, int depth) {
        const FractalKind kind = fractal == "cantor"                ? FractalKind::Cantor
                                 : fractal == "sierpinski-triangle" ? FractalKind::Triangle
                                 : fractal == "sierpinski-carpet"   ? FractalKind::Carpet
                                                                    : throw Error("unknown fractal '" + fractal + "'");
        const GapSystem system = kind == FractalKind::Cantor ? cantor_system()
                                 : kind == FractalKind::Triangle ? sierpinski_triangle_system()
                                                                 : sierpinski_carpet_system();
        const GapAddress a = gap_address(x, system, depth);
        return a.in_fractal ? std::optional<std::vector<int>>() : std::optional<std::vector<int>>(a.word);
      },
      py::arg("fractal"), py::arg("x"), py::arg("depth") = -1, "Gap word of x, or None for points of the fractal.");

  m.def("set_thread_count", &set_thread_count);
  m.def("thread_count", &thread_count);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      "Runs the ifslab command line in-process and returns (exit_code, stdout, stderr).");
}
