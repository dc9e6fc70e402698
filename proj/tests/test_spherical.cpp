#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "helix/spherical.hpp"

using namespace helix;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

CurveEvaluator helix_curve() {
    CurveEvaluator c([](double t) { return Vec3{std::cos(t), std::sin(t), t}; }, -40, 40);
    c.with_derivative(1, [](double t) { return Vec3{-std::sin(t), std::cos(t), 1}; });
    c.with_derivative(2, [](double t) { return Vec3{-std::cos(t), -std::sin(t), 0}; });
    c.with_derivative(3, [](double t) { return Vec3{std::sin(t), -std::cos(t), 0}; });
    return c;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1.0);
    return g;
}

// Hand-expanded closed form of alpha x T for the a=1, A=1, B=0 member (the
// sign convention matches the frozen position variant).
Vec3 golden_y_a1(double th) {
    const double st = std::sin(th), ct = std::cos(th);
    const double s2 = std::sin(kSqrt2 * th), c2 = std::cos(kSqrt2 * th);
    const double ss = std::sin(st), cs = std::cos(st);
    return {ct * s2 * cs - (1.0 / kSqrt2) * c2 * (cs * st + ss),
            -ct * c2 * cs - (1.0 / kSqrt2) * s2 * (cs * st + ss),
            (1.0 / kSqrt2) * (cs * st - ss)};
}

} // namespace

TEST_CASE("sabban frame") {
    CurveEvaluator great([](double t) { return Vec3{std::cos(t), std::sin(t), 0}; }, -10,
                         10);
    const SabbanFrame f = sabban_frame(great, 0.0);
    CHECK((f.alpha - Vec3{1, 0, 0}).norm() < 1e-12);
    CHECK((f.T - Vec3{0, 1, 0}).norm() < 1e-9);
    CHECK((f.Y - Vec3{0, 0, 1}).norm() < 1e-9);

    const auto p = SlantHelixParams::make(1.0, 1.0, 0.0);
    const CurveEvaluator fam = family_curve_forward(p, 0.0, kPi);
    for (double th : linspace(0.2, kPi - 0.2, 25)) {
        const SabbanFrame s = sabban_frame(fam, th);
        CHECK(std::abs(dot(s.Y, s.alpha)) < 1e-15);
        CHECK(std::abs(dot(s.Y, s.T)) < 1e-15);
        CHECK(std::abs(dot(s.alpha, s.T)) < 1e-8);
        CHECK(std::abs(s.Y.norm() - 1.0) < 1e-8);
    }

    CurveEvaluator off([](double t) { return Vec3{2 * std::cos(t), 2 * std::sin(t), 0}; },
                       -10, 10);
    CHECK_THROWS_AS(sabban_frame(off, 0.0), NotOnSphere);
}

TEST_CASE("wong radius") {
    const auto p = SlantHelixParams::make(1.0, 1.0, 0.0);
    const CurveEvaluator fam = family_curve_forward(p, 0.0, kPi);
    CHECK(wong_radius(fam, 1.0) == doctest::Approx(1.0).epsilon(1e-6));

    // the circular helix has a constant criterion-(2) value of 4, yet the ODE
    // criterion fails: (2) alone is necessary, not sufficient
    const CurveEvaluator h = helix_curve();
    for (double t : {-1.0, 0.5, 2.0})
        CHECK(wong_radius(h, t) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(wong_ode_residual(h, 0.5) == doctest::Approx(1.0).epsilon(1e-6));

    CurveEvaluator circle([](double t) { return Vec3{std::cos(t), std::sin(t), 0}; }, -10,
                          10);
    CHECK_THROWS_AS(wong_radius(circle, 0.3), TorsionDegenerate);
}

TEST_CASE("wong ode residual on the family") {
    const auto p = SlantHelixParams::make(1.0, 1.0, 0.0);
    const CurveEvaluator fam = family_curve_forward(p, -0.2, kPi + 0.2);
    double max_resid = 0.0;
    for (double th : linspace(0.1, kPi - 0.1, 60)) {
        if (std::abs(std::cos(th)) < 0.05) continue; // tau ~ 0: criterion inapplicable
        max_resid = std::max(max_resid, std::abs(wong_ode_residual(fam, th)));
    }
    CHECK(max_resid < 1e-4);
}

TEST_CASE("kappa = 1 streams force tau (the no-spherical-Salkowski mechanism)") {
    // synthetic Frenet streams with kappa = 1 and arbitrary smooth tau: the
    // criterion-(3) residual must return exactly the tau samples
    const auto make_stream = [](auto tau_fn) {
        std::vector<FrenetData> s;
        for (double t : linspace(0.0, 2.0, 101)) {
            FrenetData fd;
            fd.t = t;
            fd.nu = 1.0;
            fd.kappa = 1.0;
            fd.tau = tau_fn(t);
            s.push_back(fd);
        }
        return s;
    };
    const std::vector<std::function<double(double)>> taus = {
        [](double t) { return std::sin(t); },
        [](double t) { return std::cos(2.0 * t) + 0.5; },
        [](double t) { return std::exp(std::sin(t)) - 1.0; },
        [](double t) { return 0.3 * t * t - t + 0.2; },
        [](double t) { return 1.0 / (1.0 + t * t); },
    };
    for (const auto& tf : taus) {
        const auto stream = make_stream(tf);
        const auto resid = wong_ode_residual_stream(stream);
        for (std::size_t i = 2; i + 2 < stream.size(); ++i) {
            if (std::abs(stream[i].tau) <= kEpsTorsion) continue;
            CHECK(std::abs(resid[i] - stream[i].tau) < 1e-10);
        }
    }
}

TEST_CASE("wong fit on the family and on a non-spherical curve") {
    const auto p = SlantHelixParams::make(1.0, 1.0, 0.0);
    const CurveEvaluator fam = family_curve_forward(p, -0.2, kPi + 0.2);
    const auto grid = linspace(0.1, kPi - 0.1, 500);
    const WongReport rep = wong_fit(fam, grid);
    CHECK(rep.valid_samples == grid.size());
    CHECK(std::abs(rep.fitted_r * rep.fitted_r - 1.0) < 1e-6);
    CHECK(rep.fit_residual < 1e-6);
    CHECK(rep.ode_pass);
    CHECK(rep.spherical);

    // phase freedom: a generated (a=2, A=0, B=1) member still fits with
    // A^2+B^2 = 1 even though the raw (A, B) pair differs by a rotation
    const auto p2 = SlantHelixParams::make(2.0, 0.0, 1.0);
    const CurveEvaluator fam2 = family_curve_forward(p2, -0.2, kPi + 0.2);
    const WongReport rep2 = wong_fit(fam2, linspace(0.1, kPi - 0.1, 400));
    CHECK(std::abs(rep2.fitted_r * rep2.fitted_r - 1.0) < 1e-6);
    CHECK(rep2.fit_residual < 1e-6);

    const CurveEvaluator h = helix_curve();
    const WongReport hrep = wong_fit(h, linspace(-3.0, 3.0, 200));
    CHECK(hrep.fit_residual > 1e-2);
    CHECK(!hrep.spherical);
    CHECK(hrep.radius_constant); // constant 4, yet not spherical
}

TEST_CASE("wong fit handles the planar circle (Phi constant)") {
    // tau = 0 collapses the sinusoid to a constant; the minimum-norm fit
    // still recovers the radius (a circle is a great circle of its sphere)
    CurveEvaluator circle(
        [](double t) { return Vec3{2 * std::cos(t), 2 * std::sin(t), 0}; }, -10, 10);
    const WongReport rep = wong_fit(circle, linspace(0.0, 5.0, 100));
    CHECK(rep.fitted_r == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(rep.fit_residual < 1e-6);
}

TEST_CASE("y indicatrix fixtures") {
    const auto p = SlantHelixParams::make(1.0, 1.0, 0.0);

    // alpha x T equals the closed form used by y_indicatrix
    const CurveEvaluator fam = family_curve_forward(p, 0.0, kPi);
    for (double th : {0.4, 1.0, 2.3}) {
        const Vec3 via_cross = cross(position(p, th), frame_closed(p, th).T);
        CHECK((y_indicatrix(p, th) - via_cross).norm() < 1e-14);
        CHECK(std::abs(y_indicatrix(p, th).norm() - 1.0) < 1e-14);
    }

    // componentwise against the hand-expanded transcription over 100 points
    for (double th : linspace(0.0, kPi, 100)) {
        const Vec3 got = y_indicatrix(p, th);
        const Vec3 ref = golden_y_a1(th);
        CHECK(std::abs(got.x - ref.x) < 1e-12);
        CHECK(std::abs(got.y - ref.y) < 1e-12);
        CHECK(std::abs(got.z - ref.z) < 1e-12);
    }
}

TEST_CASE("y curve is a spherical slant helix with sigma = +a") {
    const auto p = SlantHelixParams::make(1.0, 1.0, 0.0);
    const CurveEvaluator yc = y_curve(p, -0.2, kPi + 0.2);
    CHECK(sigma(yc, 1.0) == doctest::Approx(1.0).epsilon(1e-5));
    for (double th : linspace(0.15, kPi - 0.15, 50)) {
        CHECK(std::abs(y_indicatrix(p, th).norm() - 1.0) < 1e-10);
        CHECK(sigma(yc, th) == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("y indicatrix analytic derivatives match finite differences") {
    const auto p = SlantHelixParams::make(1.5, 0.6, 0.8);
    CurveEvaluator fd_only([p](double t) { return y_indicatrix(p, t); }, -1.0, kPi + 1.0);
    for (double th : {0.5, 1.3, 2.4}) {
        for (int k = 1; k <= 3; ++k) {
            const Vec3 ana = y_indicatrix_derivative(p, th, k);
            const Vec3 num = derive(fd_only, th, k);
            const double tol = k == 3 ? 1e-4 : 1e-6;
            CHECK((ana - num).norm() < tol * std::max(1.0, ana.norm()));
        }
    }
}

TEST_CASE("y curvature formulas") {
    CHECK(y_curvatures(std::sqrt(2.0), 0.0, 1.0).kappa ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(y_curvatures(std::sqrt(2.0), 0.0, 1.0).tau == 0.0);
    CHECK_THROWS_AS(y_curvatures(1.0 + 1e-12, 0.0, 1.0), CurvatureDegenerate);

    // oracle: numeric curvature of the Y curve at theta = pi/2
    const auto p = SlantHelixParams::make(1.0, 1.0, 0.0);
    const double kappa = 1.0 / std::cos(1.0);
    const IndicatrixCurvatures ic = y_curvatures(kappa, 0.0, 1.0);
    CHECK(ic.kappa == doctest::Approx(1.0 / std::sin(1.0)).epsilon(1e-12));
    const CurveEvaluator yc = y_curve(p, -0.2, kPi + 0.2);
    CHECK(frenet_apparatus(yc, kPi / 2).kappa ==
          doctest::Approx(1.0 / std::sin(1.0)).epsilon(1e-5));
}

TEST_CASE("numeric Y curvatures match the closed-form pair") {
    const auto p = SlantHelixParams::make(1.0, 1.0, 0.0);
    const CurveEvaluator yc = y_curve(p, -0.2, kPi + 0.2);
    for (double th : linspace(0.15, kPi - 0.15, 60)) {
        // guard the Y-curve's own singularity (kappa -> 1, |Q| -> 0)
        if (std::abs(curvature_denominator_slope(p, th)) < 0.02) continue;
        const double k = curvature_closed(p, th);
        if (k <= 1.0 + 1e-6) continue;
        const IndicatrixCurvatures ref = y_curvatures(k, torsion_closed(p, th), p.a);
        const FrenetData fd = frenet_apparatus(yc, th);
        CHECK(fd.kappa == doctest::Approx(ref.kappa).epsilon(1e-5));
        CHECK(fd.tau ==
              doctest::Approx(ref.tau).epsilon(1e-5)); // B = 0: sign(PQ) < 0 throughout
    }
}

TEST_CASE("negative slant constant: Y sigma follows +a") {
    const auto p = SlantHelixParams::make(-1.0, 1.0, 0.0);
    const CurveEvaluator yc = y_curve(p, -0.2, kPi + 0.2);
    const double t = y_parameter(p, -0.2, kPi + 0.2, 1.0);
    // resolve the frame orientation against the closed-form normal
    const FrenetData fd = frenet_apparatus(yc, t);
    const double s = dot(fd.N, frame_closed(p, 1.0).N) >= 0.0 ? 1.0 : -1.0;
    CHECK(s * sigma(yc, t) == doctest::Approx(-1.0).epsilon(1e-5)); // +a = -1
    for (double th : linspace(0.2, kPi - 0.2, 20))
        CHECK(std::abs(y_indicatrix(p, th).norm() - 1.0) < 1e-10);
}

TEST_CASE("the family never produces constant nonzero torsion stretches") {
    // the no-anti-Salkowski scan: over every window of length 0.1 the closed
    // -form torsion varies
    for (double a : {0.5, 1.0, 2.0, 4.0}) {
        const auto p = SlantHelixParams::make(a, 1.0, 0.0);
        const auto grid = linspace(0.05, kPi - 0.05, 1200);
        const double window = 0.1;
        const std::size_t wpts =
            static_cast<std::size_t>(window / (grid[1] - grid[0]));
        for (std::size_t i = 0; i + wpts < grid.size(); i += wpts / 2) {
            double lo = 1e300, hi = -1e300;
            for (std::size_t j = i; j <= i + wpts; ++j) {
                const double t = torsion_closed(p, grid[j]);
                lo = std::min(lo, t);
                hi = std::max(hi, t);
            }
            CHECK(hi - lo > 1e-3);
        }
    }
}
