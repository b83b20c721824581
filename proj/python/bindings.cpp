#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypcone/classify.hpp"
#include "hypcone/error.hpp"
#include "hypcone/gh.hpp"
#include "hypcone/isometry.hpp"
#include "hypcone/smoothing.hpp"
#include "hypcone/tube.hpp"
#include "hypcone/volume.hpp"

namespace py = pybind11;
using namespace hypcone;

namespace {

py::object point_value(const BoundaryPoint& p) {
  if (p.is_infinity()) return py::none();
  return py::cast(p.value());
}

BoundaryPoint point_from(const py::object& o) {
  if (o.is_none()) return BoundaryPoint::infinity();
  return BoundaryPoint::finite(o.cast<Complex>());
}

GeodesicLine line_from(const py::tuple& t) { return GeodesicLine(point_from(t[0]), point_from(t[1])); }

py::tuple line_to(const GeodesicLine& l) { return py::make_tuple(point_value(l.tail()), point_value(l.head())); }

const char* kind_name(IsometryClass::Kind k) {
  switch (k) {
    case IsometryClass::Kind::Identity: return "identity";
    case IsometryClass::Kind::Elliptic: return "elliptic";
    case IsometryClass::Kind::Parabolic: return "parabolic";
    case IsometryClass::Kind::Loxodromic: return "loxodromic";
  }
  return "unknown";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hyperbolic cone-manifold computations";

  // Kept alive for the lifetime of the interpreter.
  static PyObject* error = (new py::exception<Error>(m, "HypconeError", PyExc_ValueError))->ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg = std::string(to_string(e.kind())) + ": " + e.what() +
                              (e.field().empty() ? "" : " [" + e.field() + "]");
      PyErr_SetString(error, msg.c_str());
    }
  });

  // isometries
  py::class_<Isometry>(m, "Isometry")
      .def(py::init<Complex, Complex, Complex, Complex>(), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"))
      .def_static("identity", &Isometry::identity)
      .def_property_readonly("entries", [](const Isometry& g) { return py::make_tuple(g.a(), g.b(), g.c(), g.d()); })
      .def("trace", &Isometry::trace)
      .def("inverse", &Isometry::inverse)
      .def("__mul__", [](const Isometry& g, const Isometry& h) { return g * h; })
      .def("apply", [](const Isometry& g, std::array<double, 3> p) {
        const H3Point q = apply(g, H3Point(p[0], p[1], p[2]));
        return std::array<double, 3>{q.x, q.y, q.t};
      });

  m.def("classify", [](const Isometry& g) {
    const IsometryClass c = classify(g);
    py::dict d;
    d["kind"] = kind_name(c.kind);
    d["angle"] = c.angle;
    d["length"] = c.length;
    return d;
  });
  m.def("complex_length", [](const Isometry& g) { return complex_length(g); });
  m.def("axis", [](const Isometry& g) { return line_to(axis(g)); });
  m.def("rotation", [](const py::tuple& line, double angle) { return Isometry::rotation(line_from(line), angle); });
  m.def("hyperbolic_distance", [](std::array<double, 3> p, std::array<double, 3> q) {
    return hyperbolic_distance(H3Point(p[0], p[1], p[2]), H3Point(q[0], q[1], q[2]));
  });
  m.def("axes_meet_point", [](const Isometry& g1, const Isometry& g2) -> py::object {
    const AxesMeetResult r = axes_meet_point(g1, g2);
    if (!r.point) return py::none();
    return py::cast(std::array<double, 3>{r.point->x, r.point->y, r.point->t});
  });

  // tubes
  py::class_<Tube>(m, "Tube")
      .def(py::init<double, double, double, double, double>(), py::arg("sigma"), py::arg("delta"), py::arg("theta"),
           py::arg("tau") = 0.0, py::arg("curvature") = -1.0)
      .def_property_readonly("sigma", &Tube::sigma)
      .def_property_readonly("delta", &Tube::delta)
      .def_property_readonly("theta", &Tube::theta)
      .def_property_readonly("tau", &Tube::tau)
      .def_property_readonly("curvature", &Tube::curvature);
  m.def("area", [](const Tube& t) { return area(t); });
  m.def("volume", [](const Tube& t) { return volume(t); });
  m.def("boundary_rectangle", &boundary_rectangle);
  m.def("systole", [](const Tube& t) { return systole(boundary_torus(t)); });
  m.def("rescale", &rescale);
  m.def("cusp_opening_family", [](const std::string& kind, int i, double theta) {
    if (kind != "angle_pinch" && kind != "twist") throw Error(ErrorKind::InvalidInput, "unknown family", "kind");
    return cusp_opening_family(kind == "twist" ? CuspOpening::Twist : CuspOpening::AnglePinch, i, theta);
  }, py::arg("kind"), py::arg("i"), py::arg("theta") = kDefaultTwistAngle);

  // smoothing
  py::class_<SmoothingProfile>(m, "SmoothingProfile")
      .def_static("standard", &SmoothingProfile::standard, py::arg("epsilon") = 0.1)
      .def_property_readonly("epsilon", &SmoothingProfile::epsilon);
  m.def("sectional_curvatures", [](const SmoothingProfile& p, double delta) {
    const auto k = sectional_curvatures(p, delta);
    return py::make_tuple(k.k12, k.k13, k.k23);
  });
  m.def("negativity_check", [](const SmoothingProfile& p, int grid) {
    const CurvatureReport r = negativity_check(p, grid);
    py::dict d;
    d["grid"] = r.grid;
    d["k12"] = r.k12;
    d["k13"] = r.k13;
    d["k23"] = r.k23;
    d["min"] = r.min;
    d["max"] = r.max;
    d["volume_integral"] = r.volume_integral;
    d["oracle_max_deviation"] = r.oracle_max_deviation;
    d["oracle_consistent"] = r.oracle_consistent;
    return d;
  });

  // volume
  py::class_<APolynomial>(m, "APolynomial")
      .def_static("parse", &APolynomial::parse)
      .def_static("load", &APolynomial::load)
      .def_static("figure_eight", &APolynomial::figure_eight)
      .def_property_readonly("terms", [](const APolynomial& a) {
        py::list out;
        for (const auto& t : a.terms()) out.append(py::make_tuple(t.i, t.j, t.c));
        return out;
      });
  m.def("core_length", [](const APolynomial& a, double theta) {
    const CoreLength c = core_length_from_apoly(a, theta);
    return py::make_tuple(c.length, c.L);
  });
  m.def("lobachevsky", &lobachevsky);
  m.def("figure_eight_volume", &figure_eight_volume);
  m.def("deformation_range", [](const APolynomial& a) {
    const DeformationRange r = deformation_range(a);
    return py::make_tuple(r.theta_star, std::string(to_string(r.criterion)));
  });

  // Gromov–Hausdorff
  py::class_<FinitePointedMetricSpace>(m, "MetricSpace")
      .def(py::init<std::vector<std::vector<double>>, int>(), py::arg("matrix"), py::arg("basepoint") = 0)
      .def_property_readonly("size", &FinitePointedMetricSpace::size)
      .def_property_readonly("matrix", &FinitePointedMetricSpace::matrix);
  m.def("is_eps_approximation", [](const Relation& r, const FinitePointedMetricSpace& x,
                                   const FinitePointedMetricSpace& y, double eps) {
    return is_eps_approximation(r, x, y, eps).ok;
  });
  m.def("min_eps", [](const FinitePointedMetricSpace& x, const FinitePointedMetricSpace& y) {
    const MinEpsResult r = min_eps(x, y);
    return py::make_tuple(r.eps, r.attained);
  });
  m.def("covering_number", [](const FinitePointedMetricSpace& x, double radius, double eps) {
    return covering_number(x, radius, eps).count;
  });

  // classification
  m.def("gauss_bonnet_defect", [](int chi, std::vector<double> angles) {
    return gauss_bonnet_defect(ConeSurface(chi, std::move(angles)));
  });
  m.def("classify_surface", [](int chi, std::vector<double> angles) {
    return std::string(to_string(classify_flat_le_pi(ConeSurface(chi, std::move(angles))).kind));
  });
  m.def("gram_matrix", [](double a, double b, double g, double eps) {
    return Eigen::Matrix4d(gram_matrix(TetrahedronAngles(a, b, g, eps)));
  });
  m.def("tetrahedron_regime", [](double a, double b, double g, double eps) {
    return std::string(to_string(tetrahedron_regime(TetrahedronAngles(a, b, g, eps)).regime));
  });
}
