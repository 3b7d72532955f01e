#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jratio/complex_geometry.hpp"
#include "jratio/constants.hpp"
#include "jratio/domains_metric.hpp"
#include "jratio/lemma_checkers.hpp"
#include "jratio/lemma_suites.hpp"
#include "jratio/lipschitz_search.hpp"

namespace py = pybind11;
using namespace jratio;

namespace {

void bind_geometry(py::module_& m) {
  py::class_<DiskAutomorphism>(m, "DiskAutomorphism")
      .def(py::init<ComplexPoint, double>(), py::arg("a"), py::arg("phase") = 0.0)
      .def_property_readonly("a", &DiskAutomorphism::a)
      .def_property_readonly("phase", &DiskAutomorphism::phase)
      .def("__call__", [](const DiskAutomorphism& h, ComplexPoint z) { return mobius_apply(h, z); })
      .def("__repr__", [](const DiskAutomorphism& h) {
        return "DiskAutomorphism(a=" + py::repr(py::cast(h.a())).cast<std::string>() +
               ", phase=" + std::to_string(h.phase()) + ")";
      });

  m.def("mobius_apply", &mobius_apply, py::arg("h"), py::arg("z"));
  m.def("chordal_image_distance", &chordal_image_distance, py::arg("h"), py::arg("z"), py::arg("w"));
  m.def("dist_to_image_puncture", &dist_to_image_puncture, py::arg("h"), py::arg("z"));
  m.def("image_boundary_distance", &image_boundary_distance, py::arg("h"), py::arg("z"));
  m.def("disk_identity_residual", &disk_identity_residual, py::arg("a"), py::arg("z"));
  m.def("derivative_modulus", &derivative_modulus, py::arg("h"), py::arg("z"));
  m.def("power_map", &power_map, py::arg("h"), py::arg("m"), py::arg("z"));
}

void bind_metric(py::module_& m) {
  py::class_<PuncturedDisk>(m, "PuncturedDisk")
      .def(py::init<>())
      .def(py::init<std::vector<ComplexPoint>>(), py::arg("punctures"))
      .def_property_readonly("punctures",
                             [](const PuncturedDisk& d) {
                               return std::vector<ComplexPoint>(d.punctures().begin(), d.punctures().end());
                             })
      .def("__contains__", &PuncturedDisk::contains);

  py::enum_<BranchTag>(m, "BranchTag")
      .value("ImagePunctureAtZ", BranchTag::ImagePunctureAtZ)
      .value("ImagePunctureAtW", BranchTag::ImagePunctureAtW)
      .value("BoundaryAtZ", BranchTag::BoundaryAtZ)
      .value("BoundaryAtW", BranchTag::BoundaryAtW);

  py::class_<TBranch>(m, "TBranch")
      .def_readonly("tag", &TBranch::tag)
      .def_readonly("value", &TBranch::value);

  m.def("boundary_distance", &boundary_distance, py::arg("domain"), py::arg("z"));
  m.def("j_metric", &j_metric, py::arg("domain"), py::arg("x"), py::arg("y"));
  m.def("t_branch", &t_branch, py::arg("a"), py::arg("z"), py::arg("w"));
}

void bind_constants(py::module_& m) {
  py::class_<ConstantsTable>(m, "ConstantsTable")
      .def_readonly("abs_a", &ConstantsTable::abs_a)
      .def_readonly("c_main", &ConstantsTable::c_main)
      .def_readonly("c_case12", &ConstantsTable::c_case12)
      .def_readonly("c_ball", &ConstantsTable::c_ball)
      .def_readonly("c_go", &ConstantsTable::c_go);

  m.def("main_constant", &main_constant, py::arg("abs_a"));
  m.def("case12_constant", &case12_constant, py::arg("abs_a"));
  m.def("ball_constant", &ball_constant, py::arg("abs_f0"));
  m.def("s1_constant", &s1_constant, py::arg("q"));
  m.def("constants_table", &constants_table, py::arg("abs_a"));
}

void bind_lemmas(py::module_& m) {
  py::class_<XYPair>(m, "XYPair").def_readonly("x", &XYPair::x).def_readonly("y", &XYPair::y);

  m.def("le1_gap", &le1_gap, py::arg("t"), py::arg("q"));
  m.def("s1_xy", &s1_xy, py::arg("a"), py::arg("z"), py::arg("w"));
  m.def("s1_condition_margin", &s1_condition_margin, py::arg("xy"), py::arg("q"));
  m.def("l3_part1_holds", &l3_part1_holds, py::arg("A"), py::arg("B"), py::arg("C"), py::arg("D"),
        py::arg("theta"));
  m.def("l3_part2_ratio", &l3_part2_ratio, py::arg("B"), py::arg("C"), py::arg("D"), py::arg("theta"));
  m.def("k_ratio", &k_ratio, py::arg("r"), py::arg("abs_a"));
  m.def("g_ratio", &g_ratio, py::arg("r"), py::arg("abs_a"));

  py::class_<SuiteResult>(m, "SuiteResult")
      .def_readonly("name", &SuiteResult::name)
      .def_readonly("passed", &SuiteResult::passed)
      .def_readonly("checks", &SuiteResult::checks)
      .def_readonly("worst", &SuiteResult::worst)
      .def_readonly("counterexample", &SuiteResult::counterexample);

  m.def(
      "run_lemma_suites",
      [](std::uint64_t samples, std::uint64_t seed) {
        return run_lemma_suites(SuiteOptions{samples, seed, FaultInjection::None});
      },
      py::arg("samples") = 100000, py::arg("seed") = 1, py::call_guard<py::gil_scoped_release>());
}

void bind_search(py::module_& m) {
  py::class_<SearchConfig>(m, "SearchConfig")
      .def(py::init<>())
      .def_readwrite("grid_n", &SearchConfig::grid_n)
      .def_readwrite("refine_iters", &SearchConfig::refine_iters)
      .def_readwrite("refine_starts", &SearchConfig::refine_starts)
      .def_readwrite("diag_epsilon", &SearchConfig::diag_epsilon)
      .def_readwrite("boundary_margin", &SearchConfig::boundary_margin)
      .def_readwrite("seed", &SearchConfig::seed)
      .def_readwrite("tol", &SearchConfig::tol)
      .def_readwrite("workers", &SearchConfig::workers);

  py::class_<RatioReport>(m, "RatioReport")
      .def_readonly("a", &RatioReport::a)
      .def_readonly("sup_estimate", &RatioReport::sup_estimate)
      .def_readonly("argmax_z", &RatioReport::argmax_z)
      .def_readonly("argmax_w", &RatioReport::argmax_w)
      .def_readonly("closed_form", &RatioReport::closed_form)
      .def_readonly("gap", &RatioReport::gap)
      .def_readonly("branch_histogram", &RatioReport::branch_histogram)
      .def_readonly("evaluations", &RatioReport::evaluations)
      .def_readonly("seed", &RatioReport::seed);

  py::class_<PowerRow>(m, "PowerRow").def_readonly("m", &PowerRow::m).def_readonly("report", &PowerRow::report);
  py::class_<PowerTable>(m, "PowerTable")
      .def_readonly("rows", &PowerTable::rows)
      .def_readonly("violations", &PowerTable::violations);
  py::class_<QRow>(m, "QRow")
      .def_readonly("m", &QRow::m)
      .def_readonly("a", &QRow::a)
      .def_readonly("report", &QRow::report);
  py::class_<AuditReport>(m, "AuditReport")
      .def_readonly("a", &AuditReport::a)
      .def_readonly("samples", &AuditReport::samples)
      .def_readonly("max_ratio", &AuditReport::max_ratio)
      .def_readonly("argmax_z", &AuditReport::argmax_z)
      .def_readonly("argmax_w", &AuditReport::argmax_w)
      .def_readonly("bound", &AuditReport::bound)
      .def_readonly("violations", &AuditReport::violations)
      .def_readonly("factor_two_violations", &AuditReport::factor_two_violations);

  const auto release = py::call_guard<py::gil_scoped_release>();
  m.def("ratio_J", &ratio_J, py::arg("a"), py::arg("z"), py::arg("w"));
  m.def("diagonal_limit", &diagonal_limit, py::arg("a"), py::arg("z"));
  m.def("power_ratio", &power_ratio, py::arg("a"), py::arg("m"), py::arg("z"), py::arg("w"));
  m.def("power_diagonal_limit", &power_diagonal_limit, py::arg("a"), py::arg("m"), py::arg("z"));
  m.def("estimate_lipschitz", &estimate_lipschitz, py::arg("a"), py::arg("cfg") = SearchConfig{}, release);
  m.def("estimate_power_constant", &estimate_power_constant, py::arg("a"), py::arg("m"),
        py::arg("cfg") = SearchConfig{}, release);
  m.def("power_monotonicity_table", &power_monotonicity_table, py::arg("a"), py::arg("n_max"),
        py::arg("cfg") = SearchConfig{}, release);
  m.def("q_scan", &q_scan, py::arg("m_list"), py::arg("cfg") = SearchConfig{}, release);
  m.def("bound_audit", &bound_audit, py::arg("a"), py::arg("n_samples"), py::arg("seed") = 0, release);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distance-ratio metric, punctured-disk automorphisms and sharp Lipschitz constants";
  bind_geometry(m);
  bind_metric(m);
  bind_constants(m);
  bind_lemmas(m);
  bind_search(m);
}
