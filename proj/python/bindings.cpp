#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numbers>
#include <vector>

#include "helix/frenet.hpp"
#include "helix/projection.hpp"
#include "helix/slant_helix.hpp"
#include "helix/spherical.hpp"
#include "helix/verify.hpp"

namespace py = pybind11;
using namespace helix;

namespace {

constexpr double kPi = std::numbers::pi;

// numeric sigma of the family member in the frozen orientation convention
// (theta-decreasing traversal, frame aligned to the closed-form normal)
double family_sigma(const SlantHelixParams& p, double theta) {
    const double lo = std::min(theta - 0.2, p.theta_lo);
    const double hi = std::max(theta + 0.2, p.theta_hi);
    const CurveEvaluator canon = family_curve(p, lo, hi);
    const double t = family_parameter(p, lo, hi, theta);
    const FrenetData fd = frenet_apparatus(canon, t);
    const double s = dot(fd.N, frame_closed(p, theta).N) >= 0.0 ? 1.0 : -1.0;
    return s * sigma(canon, t);
}

// numeric sigma of the Y-indicatrix (traversed with a*theta increasing)
double y_sigma(const SlantHelixParams& p, double theta) {
    const CurveEvaluator yc = y_curve(p, theta - 0.2, theta + 0.2);
    const double t = y_parameter(p, theta - 0.2, theta + 0.2, theta);
    const FrenetData fd = frenet_apparatus(yc, t);
    const double s = dot(fd.N, frame_closed(p, theta).N) >= 0.0 ? 1.0 : -1.0;
    return s * sigma(yc, t);
}

py::dict wong_summary(const SlantHelixParams& p, std::size_t samples) {
    const CurveEvaluator fwd = family_curve_forward(p, 0.0, kPi);
    std::vector<double> grid;
    const double lo = 0.05, hi = kPi - 0.05;
    for (std::size_t i = 0; i < samples; ++i) {
        const double th = lo + (hi - lo) * double(i) / double(samples - 1);
        bool ok = true;
        for (double d : {-0.04, 0.0, 0.04})
            if (std::abs(curvature_denominator(p, th + d)) < 0.02) ok = false;
        if (!ok) {
            if (!grid.empty()) break; // keep one contiguous stretch
            continue;
        }
        if (!grid.empty() && curvature_denominator(p, th) *
                                     curvature_denominator(p, grid.back()) < 0)
            break;
        grid.push_back(th);
    }
    const WongReport rep = wong_fit(fwd, grid);
    py::dict d;
    d["r2_mean"] = rep.r2_mean;
    d["r2_max_dev"] = rep.r2_max_dev;
    d["ode_max_abs"] = rep.ode_max_abs;
    d["fitted_r"] = rep.fitted_r;
    d["fit_residual"] = rep.fit_residual;
    d["spherical"] = rep.spherical;
    d["valid_samples"] = rep.valid_samples;
    return d;
}

py::list verify_list(const SlantHelixParams& p, std::size_t samples) {
    VerifyOptions opt;
    opt.params = p;
    opt.samples = samples;
    py::list out;
    for (const CheckResult& c : run_verification(opt)) {
        py::dict d;
        d["check"] = c.check;
        d["max_error"] = c.max_error;
        d["tolerance"] = c.tolerance;
        d["pass"] = c.pass;
        out.append(d);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "closed-form spherical slant helices: construction, Frenet "
              "diagnostics, sphericity criteria, projection and reconstruction";

    // translators run newest-first, so the base goes in before the refinements
    py::register_exception<Error>(m, "HelixError", PyExc_RuntimeError);
    py::register_exception<InvalidParams>(m, "InvalidParamsError", PyExc_ValueError);
    py::register_exception<InvalidRatio>(m, "InvalidRatioError", PyExc_ValueError);

    py::class_<Vec3>(m, "Vec3")
        .def(py::init<double, double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0,
             py::arg("z") = 0.0)
        .def_readwrite("x", &Vec3::x)
        .def_readwrite("y", &Vec3::y)
        .def_readwrite("z", &Vec3::z)
        .def("norm", &Vec3::norm)
        .def("__repr__", [](const Vec3& v) {
            return "Vec3(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ", " +
                   std::to_string(v.z) + ")";
        });

    py::class_<SlantHelixParams>(m, "SlantHelixParams")
        .def(py::init([](double a, double A, double B) {
                 return SlantHelixParams::make(a, A, B);
             }),
             py::arg("a"), py::arg("A") = 1.0, py::arg("B") = 0.0)
        .def_readonly("a", &SlantHelixParams::a)
        .def_readonly("A", &SlantHelixParams::A)
        .def_readonly("B", &SlantHelixParams::B)
        .def_readonly("theta_lo", &SlantHelixParams::theta_lo)
        .def_readonly("theta_hi", &SlantHelixParams::theta_hi);

    py::class_<ClosureResult>(m, "ClosureResult")
        .def_readonly("ratio", &ClosureResult::ratio)
        .def_readonly("rational", &ClosureResult::rational)
        .def_readonly("p", &ClosureResult::p)
        .def_readonly("q", &ClosureResult::q)
        .def_readonly("error", &ClosureResult::error)
        .def_readonly("theta_period", &ClosureResult::theta_period);

    m.def("position", &position, py::arg("params"), py::arg("theta"),
          "closed-form point on the unit sphere");
    m.def("position_derivative", &position_derivative, py::arg("params"),
          py::arg("theta"), py::arg("order"));
    m.def(
        "frame_closed",
        [](const SlantHelixParams& p, double theta) {
            const Frame f = frame_closed(p, theta);
            return py::make_tuple(f.T, f.N, f.B);
        },
        py::arg("params"), py::arg("theta"), "closed-form (T, N, B)");
    m.def("curvature_closed", &curvature_closed, py::arg("params"), py::arg("theta"));
    m.def("torsion_closed", &torsion_closed, py::arg("params"), py::arg("theta"));
    m.def("speed_weight", &speed_weight, py::arg("params"), py::arg("theta"));
    m.def(
        "arc_length",
        [](const SlantHelixParams& p, double t0, double t1) {
            return arc_length(p, t0, t1);
        },
        py::arg("params"), py::arg("theta0"), py::arg("theta1"));
    m.def("curvature_denominator", &curvature_denominator, py::arg("params"),
          py::arg("theta"));
    m.def("sigma", &family_sigma, py::arg("params"), py::arg("theta"),
          "numeric normal-indicatrix geodesic curvature of the member (equals -a)");
    m.def("y_indicatrix", &y_indicatrix, py::arg("params"), py::arg("theta"));
    m.def("y_sigma", &y_sigma, py::arg("params"), py::arg("theta"),
          "numeric sigma of the Y-indicatrix (equals +a)");
    m.def(
        "y_curvatures",
        [](double kappa, double tau, double a) {
            const IndicatrixCurvatures ic = y_curvatures(kappa, tau, a);
            return py::make_tuple(ic.kappa, ic.tau, ic.sigma);
        },
        py::arg("kappa"), py::arg("tau"), py::arg("a"));
    m.def(
        "is_closed",
        [](const SlantHelixParams& p, int max_den, double tol) {
            return is_closed(p, max_den, tol);
        },
        py::arg("params"), py::arg("max_denominator") = 64, py::arg("tol") = 1e-9);
    m.def("a_for_ratio", &a_for_ratio, py::arg("p"), py::arg("q"));
    m.def("tangent_angle", &tangent_angle, py::arg("params"), py::arg("theta"));
    m.def("projection_curvature", &projection_curvature, py::arg("params"),
          py::arg("theta"), py::arg("kappa"));
    m.def(
        "lift_to_sphere",
        [](const SlantHelixParams& p, const std::vector<double>& grid) {
            return lift_to_sphere(p, grid);
        },
        py::arg("params"), py::arg("theta_grid"),
        "quadrature reconstruction, shifted onto the unit sphere");
    m.def("wong_report", &wong_summary, py::arg("params"), py::arg("samples") = 400,
          "Wong sphericity criteria summary over a guarded grid");
    m.def("verify", &verify_list, py::arg("params"), py::arg("samples") = 200,
          "run the invariant check suite; list of {check, max_error, tolerance, pass}");

#ifdef HELIX_VERSION
    m.attr("__version__") = HELIX_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
