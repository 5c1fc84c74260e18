#include "hsph/report.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace hsph;

namespace {

ExtremaOptions extrema_options(int restarts, int max_iters, double tol, std::uint64_t seed) {
  ExtremaOptions o;
  o.restarts = restarts;
  o.max_iters = max_iters;
  o.tol = tol;
  o.seed = seed;
  return o;
}

double sectional_of(const CurvatureOperator& r, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& y) {
  if (x.size() != r.dim() || y.size() != r.dim()) {
    throw std::invalid_argument("plane vectors must have length D");
  }
  const Eigen::VectorXd u = x.normalized();
  const Eigen::VectorXd w = y - y.dot(u) * u;
  if (!(w.norm() > 1e-12 * y.norm())) throw std::invalid_argument("vectors are parallel");
  return sectional(Bivector::wedge(u, w.normalized()), r);
}

py::dict plane_dict(const Plane& p) {
  py::dict d;
  d["x"] = p.x;
  d["y"] = p.y;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Curvature of invariant Hermitian metrics on S^{2n+1} x S^{2p+1}";

  py::register_exception<NonUnitBivector>(m, "NonUnitBivector", PyExc_ValueError);
  py::register_exception<NonDecomposableBivector>(m, "NonDecomposableBivector",
                                                  PyExc_ValueError);

  py::class_<StructureParams>(m, "StructureParams")
      .def(py::init([](int n, int p, double a, double c) {
             StructureParams s{n, p, a, c};
             s.validate();
             return s;
           }),
           py::arg("n") = 1, py::arg("p") = 1, py::arg("a") = 0.0, py::arg("c") = 1.0)
      .def_readonly("n", &StructureParams::n)
      .def_readonly("p", &StructureParams::p)
      .def_readonly("a", &StructureParams::a)
      .def_readonly("c", &StructureParams::c)
      .def_property_readonly("dim", &StructureParams::dim)
      .def("__repr__", [](const StructureParams& s) {
        std::ostringstream os;
        os << "StructureParams(n=" << s.n << ", p=" << s.p << ", a=" << s.a << ", c=" << s.c
           << ")";
        return os.str();
      });

  m.def("complex_structure", &complex_structure, py::arg("params"));
  m.def("fundamental_form", &fundamental_form, py::arg("n"), py::arg("p"));
  m.def("metric", [](const StructureParams& s) { return metric(s).matrix; }, py::arg("params"));
  m.def("orthonormal_frame", [](const StructureParams& s) { return orthonormal_frame(s).vectors; },
        py::arg("params"));
  m.def("is_positive_associated",
        [](const Eigen::MatrixXd& j, const Eigen::MatrixXd& omega) {
          return check_positive_associated(j, omega).ok();
        },
        py::arg("j"), py::arg("omega"));

  m.def("u_tensor",
        [](const StructureParams& s, bool closed_form) {
          const UTensor u =
              closed_form ? u_tensor_closed_form(s) : u_tensor_solve(s, build_frame(s.n, s.p));
          const int d = u.dim();
          std::vector<Eigen::MatrixXd> out(d, Eigen::MatrixXd::Zero(d, d));
          for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) out[i].row(j) = u.at(i, j).transpose();
          }
          return out;
        },
        py::arg("params"), py::arg("closed_form") = false,
        "U(e_i, e_j) as result[i][j, :] over the p basis");

  py::class_<CurvatureOperator>(m, "CurvatureOperator")
      .def(py::init([](const StructureParams& s) { return curvature_operator(s); }),
           py::arg("params"))
      .def_property_readonly("dim", &CurvatureOperator::dim)
      .def_property_readonly("matrix", &CurvatureOperator::matrix)
      .def("tensor", &CurvatureOperator::tensor)
      .def("entry", &CurvatureOperator::entry, py::arg("alpha"), py::arg("nu"), py::arg("rho"),
           py::arg("mu"))
      .def("sectional", &sectional_of, py::arg("x"), py::arg("y"),
           "K of span{x, y}, vectors in orthonormal-frame coordinates")
      .def("symmetry_error",
           [](const CurvatureOperator& r) { return r.symmetries().worst(); });

  m.def("ricci_closed_form", &ricci_closed_form, py::arg("params"));
  m.def("ricci_eigenvalues", &ricci_eigenvalues_closed_form, py::arg("params"));
  m.def("ricci_via_besse", py::overload_cast<const StructureParams&>(&ricci_via_besse),
        py::arg("params"));
  m.def("ricci_via_contraction",
        py::overload_cast<const StructureParams&>(&ricci_via_contraction), py::arg("params"));
  m.def("scalar_closed_form", &scalar_closed_form, py::arg("params"));
  m.def("scalar_via_trace", py::overload_cast<const StructureParams&>(&scalar_via_trace),
        py::arg("params"));

  m.def("classify_region",
        [](double a, double c) { return std::string(region_name(classify_region(a, c))); },
        py::arg("a"), py::arg("c"));
  m.def("theorem_bounds",
        [](const StructureParams& s) {
          const TheoremBounds b = theorem_bounds(s);
          return py::make_tuple(b.k_min, b.k_max);
        },
        py::arg("params"));

  m.def("numeric_extremes",
        [](const StructureParams& s, int restarts, int max_iters, double tol, std::uint64_t seed) {
          NumericExtremes e;
          {
            py::gil_scoped_release release;
            e = numeric_extremes(s, extrema_options(restarts, max_iters, tol, seed));
          }
          py::dict d;
          d["k_lo"] = e.k_lo;
          d["k_hi"] = e.k_hi;
          d["argmin"] = plane_dict(e.argmin);
          d["argmax"] = plane_dict(e.argmax);
          d["converged"] = e.converged;
          return d;
        },
        py::arg("params"), py::arg("restarts") = 64, py::arg("max_iters") = 2000,
        py::arg("tol") = 1e-9, py::arg("seed") = 0);

  m.def("report_json",
        [](const StructureParams& s, int restarts, std::uint64_t seed, bool checks) {
          ReportOptions o;
          o.extrema.restarts = restarts;
          o.extrema.seed = seed;
          o.with_checks = checks;
          py::gil_scoped_release release;
          return jsonl_row(make_report(s, o));
        },
        py::arg("params"), py::arg("restarts") = 64, py::arg("seed") = 0,
        py::arg("checks") = false);

  m.def("scan_csv",
        [](int n, int p, double a_min, double a_max, double c_min, double c_max, int steps_a,
           int steps_c, int restarts, std::uint64_t seed, unsigned threads) {
          ReportOptions o;
          o.extrema.restarts = restarts;
          o.extrema.seed = seed;
          std::ostringstream os;
          py::gil_scoped_release release;
          write_reports(os,
                        scan({n, p, a_min, a_max, c_min, c_max, steps_a, steps_c}, o, threads),
                        OutputFormat::Csv, false);
          return os.str();
        },
        py::arg("n") = 1, py::arg("p") = 1, py::arg("a_min") = -3.0, py::arg("a_max") = 3.0,
        py::arg("c_min") = 0.1, py::arg("c_max") = 4.0, py::arg("steps_a") = 5,
        py::arg("steps_c") = 5, py::arg("restarts") = 64, py::arg("seed") = 0,
        py::arg("threads") = 0);
}
