#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "helix/frenet.hpp"
#include "helix/projection.hpp"

using namespace helix;

namespace {

constexpr double kPi = std::numbers::pi;
const Vec3 zhat{0, 0, 1};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1.0);
    return g;
}

} // namespace

TEST_CASE("projection basics") {
    CurveEvaluator axis_line([](double t) { return Vec3{0, 0, t}; }, -5, 5);
    CHECK(project(axis_line, zhat, 1.3).norm() == 0.0);

    CurveEvaluator c([](double t) { return Vec3{t, 2 * t, 3 + t}; }, -5, 5);
    CHECK((project(c, zhat, 0.5) - Vec3{0.5, 1.0, 0.0}).norm() == 0.0);

    const auto p = SlantHelixParams::make(1.0, 1.0, 0.0);
    CurveEvaluator fam = family_curve_forward(p, 0.0, kPi);
    const Vec3 pos1 = position(p, 1.0);
    CHECK((project(fam, zhat, 1.0) - Vec3{pos1.x, pos1.y, 0.0}).norm() == 0.0);

    CHECK_THROWS_AS(project(c, Vec3{0, 0, 2}, 0.5), InvalidParams);
}

TEST_CASE("projection is idempotent") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int i = 0; i < 100; ++i) {
        const Vec3 axis = normalized({g(rng), g(rng), g(rng)});
        const Vec3 pt{g(rng), g(rng), g(rng)};
        const Vec3 once = project_point(pt, axis);
        CHECK((project_point(once, axis) - once).norm() < 1e-15);
        CHECK(std::abs(dot(once, axis)) < 1e-12);
    }
}

TEST_CASE("axis angles") {
    const auto p = SlantHelixParams::make(1.0, 1.0, 0.0);
    const AxisAngles at_mid = axis_angles(p, kPi / 2);
    CHECK(std::abs(at_mid.cos1) < 1e-15);
    CHECK(at_mid.cos2 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(at_mid.cos3 == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ua(0.3, 4.0), ut(0.0, kPi);
    for (int i = 0; i < 100; ++i) {
        const auto q = SlantHelixParams::make(ua(rng), 1.0, 0.0);
        const AxisAngles ang = axis_angles(q, ut(rng));
        CHECK(ang.cos1 * ang.cos1 + ang.cos2 * ang.cos2 + ang.cos3 * ang.cos3 ==
              doctest::Approx(1.0).epsilon(1e-10));
        CHECK(ang.sin1 * ang.sin1 + ang.cos1 * ang.cos1 ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
    for (double th : linspace(0.0, kPi, 50))
        CHECK(axis_angles(p, th).cos2 ==
              doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("projection curvature: both routes and the numeric oracle") {
    const auto p = SlantHelixParams::make(1.0, 1.0, 0.0);
    const double kappa = curvature_closed(p, kPi / 2); // 1/cos(1)
    const double kpi = projection_curvature(p, kPi / 2, kappa);
    CHECK(kpi == doctest::Approx(kappa / std::sqrt(2.0)).epsilon(1e-12));

    // oracle: numeric planar curvature of the projected curve
    const CurveEvaluator proj = projected_curve(family_curve_forward(p, 0.0, kPi), zhat);
    const FrenetData fd = frenet_apparatus(proj, kPi / 2);
    CHECK(fd.kappa == doctest::Approx(kpi).epsilon(1e-5));

    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> ua(0.3, 4.0), ut(0.0, kPi);
    for (int i = 0; i < 100; ++i) {
        const auto q = SlantHelixParams::make(ua(rng), 1.0, 0.0);
        const double th = ut(rng);
        const AxisAngles ang = axis_angles(q, th);
        CHECK(projection_curvature(q, th, 1.7) ==
              doctest::Approx(projection_curvature_via_angles(ang, 1.7)).epsilon(1e-12));
    }
    CHECK(std::abs(projection_curvature(p, 1e-9, 1.0)) < 1e-8);
}

TEST_CASE("projected curve is planar") {
    const auto p = SlantHelixParams::make(1.0, 1.0, 0.0);
    const CurveEvaluator proj = projected_curve(family_curve_forward(p, 0.0, kPi), zhat);
    for (double th : linspace(0.15, kPi - 0.15, 30)) {
        const FrenetData fd = frenet_apparatus(proj, th);
        CHECK(std::abs(fd.tau) < 1e-8);
    }
}

TEST_CASE("tangent angle") {
    const auto p = SlantHelixParams::make(1.0, 1.0, 0.0);
    CHECK(tangent_angle(p, 0.0) == 0.0);

    const double m = std::sqrt(2.0);
    CHECK(tangent_angle(p, 0.3) ==
          doctest::Approx(-std::atan(m * std::tan(0.3)) + m * 0.3).epsilon(1e-15));

    // continuity across theta = pi/2, checked against the kappa_pi integral
    const auto grid = linspace(0.3, 2.8, 2501);
    std::vector<double> integrand(grid.size());
    const double c = std::sqrt(2.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double th = grid[i];
        const double R = std::sqrt(1.0 + std::sin(th) * std::sin(th));
        integrand[i] = projection_curvature(p, th, curvature_closed(p, th)) * (R / c) *
                       std::abs(speed_weight(p, th));
    }
    const std::vector<double> cum = cumulative_simpson(grid, integrand);
    double prev = tangent_angle(p, grid[0]);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double phi = tangent_angle(p, grid[i]);
        CHECK(std::abs(phi - (tangent_angle(p, grid[0]) + cum[i])) < 1e-6);
        if (i > 0) CHECK(std::abs(phi - prev) < 0.01); // no branch jumps
        prev = phi;
    }
}

TEST_CASE("intrinsic reconstruction: constant curvature closes a circle") {
    const auto s = linspace(0.0, 4.0 * kPi, 2001);
    const auto samples = reconstruct_plane([](double) { return 0.5; }, s, QuadConfig{});
    const double gap = std::hypot(samples.back().x - samples.front().x,
                                  samples.back().y - samples.front().y);
    CHECK(gap < 1e-6);
    for (const auto& ps : samples) {
        const double r = std::hypot(ps.x - 0.0, ps.y - 2.0);
        CHECK(std::abs(r - 2.0) < 1e-6);
    }
}

TEST_CASE("intrinsic reconstruction: zero curvature is a straight segment") {
    const auto s = linspace(0.0, 3.0, 31);
    const auto samples = reconstruct_plane([](double) { return 0.0; }, s, QuadConfig{});
    for (const auto& ps : samples) {
        CHECK(std::abs(ps.x - ps.s) < 1e-12);
        CHECK(std::abs(ps.y) < 1e-12);
    }
}

TEST_CASE("intrinsic reconstruction reproduces the projected member up to congruence") {
    const auto p = SlantHelixParams::make(1.0, 1.0, 0.0);
    const double c = std::sqrt(2.0);
    const double th_lo = 0.1, th_hi = kPi - 0.1;

    // planar arc length s(theta), strictly increasing here (w > 0)
    const auto dspi = [&](double th) {
        const double R = std::sqrt(1.0 + std::sin(th) * std::sin(th));
        return (R / c) * speed_weight(p, th);
    };
    const auto theta_grid = linspace(th_lo, th_hi, 1001);
    const std::vector<double> s_nodes = cumulative_simpson(theta_grid, dspi, QuadConfig{});

    // theta(s) by bracketing plus Newton on the local integral
    const auto theta_of_s = [&](double s) {
        auto it = std::upper_bound(s_nodes.begin(), s_nodes.end(), s);
        std::size_t i = (it == s_nodes.begin()) ? 0 : (it - s_nodes.begin()) - 1;
        if (i >= s_nodes.size() - 1) i = s_nodes.size() - 2;
        double th = theta_grid[i];
        double acc = s_nodes[i];
        for (int iter = 0; iter < 4; ++iter) {
            const double f = acc + integrate(dspi, theta_grid[i], th, QuadConfig{}) - s;
            th -= f / dspi(th);
            th = std::clamp(th, th_lo, th_hi);
        }
        return th;
    };
    const auto kappa_of_s = [&](double s) {
        const double th = theta_of_s(s);
        return projection_curvature(p, th, curvature_closed(p, th));
    };

    const auto rebuilt = reconstruct_plane(kappa_of_s, s_nodes, QuadConfig{});

    std::vector<std::array<double, 2>> from, to;
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        from.push_back({rebuilt[i].x, rebuilt[i].y});
        const Vec3 pr = position(p, theta_grid[i]);
        to.push_back({pr.x, pr.y});
    }
    const Rigid2D reg = register_planar(from, to);
    double max_dist = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) {
        const auto q = reg.apply(from[i]);
        max_dist = std::max(max_dist, std::hypot(q[0] - to[i][0], q[1] - to[i][1]));
    }
    CHECK(max_dist < 1e-5);
}

TEST_CASE("sphere fit recovers synthetic spheres") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g;
    std::vector<Vec3> pts;
    const Vec3 center{0.3, -0.7, 1.1};
    const double radius = 2.5;
    for (int i = 0; i < 200; ++i) {
        const Vec3 dir = normalized({g(rng), g(rng), g(rng)});
        pts.push_back(center + radius * dir);
    }
    const SphereFit fit = fit_sphere(pts);
    CHECK((fit.center - center).norm() < 1e-12);
    CHECK(fit.radius == doctest::Approx(radius).epsilon(1e-12));
    CHECK(fit.max_residual < 1e-12);

    // coplanar circle: the system is rank deficient
    std::vector<Vec3> flat;
    for (int i = 0; i < 50; ++i)
        flat.push_back({std::cos(0.1 * i), std::sin(0.1 * i), 0.0});
    CHECK_THROWS_AS(fit_sphere(flat), Error);
}

TEST_CASE("lift to sphere reproduces the generator") {
    const auto p = SlantHelixParams::make(1.0, 1.0, 0.0);
    const auto grid = linspace(0.05, kPi - 0.05, 2000);
    const std::vector<Vec3> lifted = lift_to_sphere(p, grid);
    double max_dev = 0.0, max_norm = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        max_dev = std::max(max_dev, (lifted[i] - position(p, grid[i])).norm());
        max_norm = std::max(max_norm, std::abs(lifted[i].norm() - 1.0));
    }
    CHECK(max_dev < 1e-6);
    CHECK(max_norm < 1e-6);

    // z profile symmetric under theta -> pi - theta (grid is symmetric)
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n / 2; ++i)
        CHECK(std::abs(lifted[i].z - lifted[n - 1 - i].z) < 1e-6);
}

TEST_CASE("planar registration recovers known motions") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double ang = 3.0 * u(rng);
        const double tx = 2.0 * u(rng), ty = 2.0 * u(rng);
        const bool reflect = trial % 2 == 0;
        std::vector<std::array<double, 2>> from, to;
        for (int i = 0; i < 40; ++i) {
            const double x = u(rng), y = u(rng);
            from.push_back({x, y});
            const double yy = reflect ? -y : y;
            to.push_back({std::cos(ang) * x - std::sin(ang) * yy + tx,
                          std::sin(ang) * x + std::cos(ang) * yy + ty});
        }
        const Rigid2D reg = register_planar(from, to);
        for (std::size_t i = 0; i < from.size(); ++i) {
            const auto q = reg.apply(from[i]);
            CHECK(std::hypot(q[0] - to[i][0], q[1] - to[i][1]) < 1e-10);
        }
    }
}
