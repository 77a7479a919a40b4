#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eccpie/charts.hpp"
#include "eccpie/geometry.hpp"
#include "eccpie/homotopy.hpp"
#include "eccpie/newton.hpp"
#include "eccpie/piecut.hpp"
#include "eccpie/polysys.hpp"
#include "eccpie/taylor.hpp"

namespace py = pybind11;
using namespace eccpie;

namespace {

Point2 to_point(std::pair<double, double> p) { return {p.first, p.second}; }

}  // namespace

PYBIND11_MODULE(_eccpie, m) {
  m.doc() = "Eccentric pie charts and 3-blade pie cutting";

  py::enum_<Orientation>(m, "Orientation")
      .value("counterclockwise", Orientation::counterclockwise)
      .value("clockwise", Orientation::clockwise);

  // geometry
  m.def("triangle_area", [](std::pair<double, double> a, std::pair<double, double> b,
                            std::pair<double, double> c) {
    return triangle_area(to_point(a), to_point(b), to_point(c));
  });
  m.def("signed_triangle_area",
        [](std::pair<double, double> a, std::pair<double, double> b,
           std::pair<double, double> c) {
          return signed_triangle_area(to_point(a), to_point(b), to_point(c));
        });
  m.def("central_angle", [](std::pair<double, double> a, std::pair<double, double> b) {
    return central_angle(to_point(a), to_point(b));
  });
  m.def("segment_area", &segment_area);
  m.def("ray_extent",
        [](std::pair<double, double> apex, double phi) { return ray_extent(to_point(apex), phi); });
  m.def("sector_area",
        [](std::pair<double, double> apex, double phi_start, double phi_end, Orientation o) {
          return sector_area_decomposed({to_point(apex), phi_start, phi_end, o});
        },
        py::arg("apex"), py::arg("phi_start"), py::arg("phi_end"),
        py::arg("orientation") = Orientation::counterclockwise);
  m.def("sector_area_integral",
        [](std::pair<double, double> apex, double phi_start, double phi_end, Orientation o) {
          return sector_area_integral({to_point(apex), phi_start, phi_end, o});
        },
        py::arg("apex"), py::arg("phi_start"), py::arg("phi_end"),
        py::arg("orientation") = Orientation::counterclockwise);
  m.def("pizza_check",
        [](std::pair<double, double> apex, int n_blades, double alpha) {
          return pizza_check(to_point(apex), n_blades, alpha);
        },
        py::arg("apex"), py::arg("n_blades"), py::arg("alpha") = 0.0);

  // taylor
  py::class_<UniPoly>(m, "UniPoly")
      .def_readonly("center", &UniPoly::center)
      .def_readonly("coeffs", &UniPoly::coeffs)
      .def("__call__", [](const UniPoly& p, double x) { return eval_unipoly(p, x); });
  m.def("arccos_taylor", &arccos_taylor, py::arg("center"), py::arg("n_terms"));
  m.def("max_abs_error", &max_abs_error, py::arg("poly"), py::arg("lo"), py::arg("hi"),
        py::arg("samples"));

  // charts
  py::class_<ChartLayout>(m, "ChartLayout")
      .def_property_readonly("apex",
                             [](const ChartLayout& l) {
                               return std::make_pair(l.apex.x, l.apex.y);
                             })
      .def_readonly("ray_angles", &ChartLayout::ray_angles)
      .def_property_readonly("boundary_points",
                             [](const ChartLayout& l) {
                               std::vector<std::pair<double, double>> pts;
                               for (const auto& p : l.boundary_points)
                                 pts.emplace_back(p.x, p.y);
                               return pts;
                             })
      .def_readonly("sector_areas", &ChartLayout::sector_areas)
      .def_readonly("warnings", &ChartLayout::warnings);
  m.def("solve_chart",
        [](const std::vector<double>& shares, std::pair<double, double> apex,
           std::pair<double, double> start, bool clockwise) {
          ChartSpec spec;
          spec.shares = shares;
          spec.apex = to_point(apex);
          spec.start_point = to_point(start);
          spec.orientation =
              clockwise ? Orientation::clockwise : Orientation::counterclockwise;
          return solve_chart(spec);
        },
        py::arg("shares"), py::arg("apex"),
        py::arg("start") = std::make_pair(0.0, 1.0), py::arg("clockwise") = false);
  m.def("nine_cell_grid", &nine_cell_grid);
  m.def("render_svg",
        [](const std::vector<ChartLayout>& layouts, double cell_size, int columns,
           bool labels) { return render_svg(layouts, {cell_size, columns, labels}); },
        py::arg("layouts"), py::arg("cell_size") = 300.0, py::arg("columns") = 1,
        py::arg("labels") = true);

  // polysys
  py::class_<PolySystem>(m, "PolySystem")
      .def_readonly("var_names", &PolySystem::var_names)
      .def("total_degrees", &PolySystem::total_degrees)
      .def("bezout_count", &PolySystem::bezout_count)
      .def("eval", [](const PolySystem& s, const ComplexVec& p) { return s.eval(p); })
      .def("exact_residual",
           [](const PolySystem& s, const RealVec& p) {
             if (!s.exact_residual)
               throw std::runtime_error("system has no exact companion");
             return s.exact_residual(p);
           });
  m.def("max_sector_fraction", &max_sector_fraction);
  m.def("build_piecut_system", &build_piecut_system, py::arg("lambda1"), py::arg("lambda2"),
        py::arg("taylor"));
  m.def("build_single_sector_system", &build_single_sector_system, py::arg("lam"),
        py::arg("apex_x"), py::arg("taylor"));
  m.def("export_system", &export_system);
  m.def("parse_system", &parse_system);

  // solvers
  py::class_<TrackerConfig>(m, "TrackerConfig")
      .def(py::init<>())
      .def_readwrite("path_budget", &TrackerConfig::path_budget)
      .def_readwrite("budget_override", &TrackerConfig::budget_override)
      .def_readwrite("seed", &TrackerConfig::seed);
  py::enum_<RootClass>(m, "RootClass")
      .value("complex_root", RootClass::complex_root)
      .value("real_rejected", RootClass::real_rejected)
      .value("real_accepted", RootClass::real_accepted);
  py::class_<Root>(m, "Root")
      .def_readonly("point", &Root::point)
      .def_readonly("classification", &Root::classification)
      .def_readonly("rejection_reasons", &Root::rejection_reasons);
  py::class_<RootSet>(m, "RootSet").def_readonly("roots", &RootSet::roots);
  m.def("total_degree_solve",
        [](const PolySystem& sys, const TrackerConfig& cfg) {
          return total_degree_solve(sys, cfg);
        },
        py::arg("system"), py::arg("config") = TrackerConfig{});
  m.def("filter_roots",
        [](const PolySystem& sys, const RootSet& roots) { return filter_roots(sys, roots); });

  py::enum_<PiecutMode>(m, "PiecutMode")
      .value("oracle", PiecutMode::oracle)
      .value("pipeline", PiecutMode::pipeline)
      .value("refine_only", PiecutMode::refine_only);
  py::class_<PiecutSolution>(m, "PiecutSolution")
      .def_readonly("values", &PiecutSolution::values)
      .def_readonly("exact_residual_norm", &PiecutSolution::exact_residual_norm)
      .def_readonly("class_size", &PiecutSolution::class_size);
  py::class_<PiecutOutcome>(m, "PiecutOutcome")
      .def_readonly("solutions", &PiecutOutcome::solutions)
      .def_readonly("infeasible_warning", &PiecutOutcome::infeasible_warning)
      .def_readonly("diagnostics", &PiecutOutcome::diagnostics);
  m.def("solve_piecut",
        [](double l1, double l2, PiecutMode mode, const TrackerConfig& cfg,
           const std::vector<RealVec>& starts) {
          return solve_piecut(l1, l2, mode, cfg, starts);
        },
        py::arg("lambda1"), py::arg("lambda2"), py::arg("mode") = PiecutMode::oracle,
        py::arg("config") = TrackerConfig{}, py::arg("starts") = std::vector<RealVec>{});
}
