#include "helix/projection.hpp"

#include <algorithm>
#include <cmath>

namespace helix {

namespace {

constexpr double kPi = std::numbers::pi;

void check_axis(const Vec3& axis) {
    if (std::abs(axis.norm() - 1.0) > 1e-10)
        throw InvalidParams("project: axis must be a unit vector");
}

} // namespace

Vec3 project_point(const Vec3& pt, const Vec3& axis) {
    return pt - dot(pt, axis) * axis;
}

Vec3 project(const CurveEvaluator& curve, const Vec3& axis, double t) {
    check_axis(axis);
    return project_point(curve.point(t), axis);
}

CurveEvaluator projected_curve(const CurveEvaluator& curve, const Vec3& axis) {
    check_axis(axis);
    CurveEvaluator out([curve, axis](double t) { return project_point(curve.point(t), axis); },
                       curve.t_lo(), curve.t_hi());
    for (int k = 1; k <= 3; ++k) {
        if (curve.has_analytic(k)) {
            out.with_derivative(k, [curve, axis, k](double t) {
                return project_point(curve.analytic_derivative(k, t), axis);
            });
        }
    }
    return out;
}

AxisAngles axis_angles(const SlantHelixParams& p, double theta) {
    const double c = std::sqrt(1.0 + p.a * p.a);
    AxisAngles ang;
    ang.cos1 = -std::cos(theta) / c;
    ang.cos2 = p.a / c;
    ang.cos3 = std::sin(theta) / c;
    ang.sin1 = std::sqrt(p.a * p.a + std::sin(theta) * std::sin(theta)) / c;
    return ang;
}

double projection_curvature(const SlantHelixParams& p, double theta, double kappa) {
    const double s = std::sin(theta);
    const double denom = std::pow(p.a * p.a + s * s, 1.5);
    return (1.0 + p.a * p.a) * s / denom * kappa;
}

double projection_curvature_via_angles(const AxisAngles& ang, double kappa) {
    return ang.cos3 / (ang.sin1 * ang.sin1 * ang.sin1) * kappa;
}

double tangent_angle(const SlantHelixParams& p, double theta) {
    const double m = std::sqrt(1.0 + p.a * p.a) / p.a;
    // psi = continuous branch of arctan(m tan theta): the angle of the vector
    // (cos theta, m sin theta), unwound to stay within pi/2 of theta.
    const double base = std::atan2(m * std::sin(theta), std::cos(theta));
    const double psi = base + 2.0 * kPi * std::round((theta - base) / (2.0 * kPi));
    return m * theta - psi;
}

std::vector<PlanarSample> reconstruct_plane(const ScalarFn& kappa_of_s,
                                            std::span<const double> s_grid,
                                            const QuadConfig& cfg) {
    const std::size_t n = s_grid.size();
    if (n < 3)
        throw InvalidParams("reconstruct_plane: need at least 3 grid points");
    for (std::size_t i = 1; i < n; ++i)
        if (!(s_grid[i] > s_grid[i - 1]))
            throw InvalidParams("reconstruct_plane: grid must be strictly increasing");

    const std::vector<double> phi = cumulative_simpson(s_grid, kappa_of_s, cfg);

    // Tangent angle at arbitrary s (for refinement of the cos/sin integrals):
    // nearest node value plus the local kappa integral.
    const auto phi_at = [&](double s) {
        auto it = std::upper_bound(s_grid.begin(), s_grid.end(), s);
        std::size_t i = (it == s_grid.begin()) ? 0 : static_cast<std::size_t>(it - s_grid.begin()) - 1;
        if (i >= n - 1) i = n - 2;
        return phi[i] + integrate(kappa_of_s, s_grid[i], s, cfg);
    };

    const std::vector<double> xs =
        cumulative_simpson(s_grid, [&](double s) { return std::cos(phi_at(s)); }, cfg);
    const std::vector<double> ys =
        cumulative_simpson(s_grid, [&](double s) { return std::sin(phi_at(s)); }, cfg);

    std::vector<PlanarSample> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = {s_grid[i], xs[i], ys[i], phi[i], kappa_of_s(s_grid[i])};
    }
    return out;
}

SphereFit fit_sphere(std::span<const Vec3> pts) {
    if (pts.size() < 4)
        throw InvalidParams("fit_sphere: need at least 4 points");
    // Linear least squares on 2<p,m> + beta = ||p||^2 with r^2 = beta + ||m||^2.
    double M[4][4] = {};
    double rhs[4] = {};
    for (const Vec3& p : pts) {
        const double row[4] = {2.0 * p.x, 2.0 * p.y, 2.0 * p.z, 1.0};
        const double b = p.norm2();
        for (int i = 0; i < 4; ++i) {
            rhs[i] += row[i] * b;
            for (int j = 0; j < 4; ++j) M[i][j] += row[i] * row[j];
        }
    }
    // Gaussian elimination with partial pivoting.
    int idx[4] = {0, 1, 2, 3};
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(M[idx[r]][col]) > std::abs(M[idx[piv]][col])) piv = r;
        std::swap(idx[col], idx[piv]);
        const double d = M[idx[col]][col];
        if (std::abs(d) < 1e-30)
            throw Error("fit_sphere: degenerate point cloud");
        for (int r = col + 1; r < 4; ++r) {
            const double f = M[idx[r]][col] / d;
            for (int j = col; j < 4; ++j) M[idx[r]][j] -= f * M[idx[col]][j];
            rhs[idx[r]] -= f * rhs[idx[col]];
        }
    }
    double sol[4];
    for (int r = 3; r >= 0; --r) {
        double acc = rhs[idx[r]];
        for (int j = r + 1; j < 4; ++j) acc -= M[idx[r]][j] * sol[j];
        sol[r] = acc / M[idx[r]][r];
    }
    SphereFit fit;
    fit.center = {sol[0], sol[1], sol[2]};
    fit.radius = std::sqrt(std::max(0.0, sol[3] + fit.center.norm2()));
    for (const Vec3& p : pts)
        fit.max_residual = std::max(fit.max_residual,
                                    std::abs((p - fit.center).norm() - fit.radius));
    return fit;
}

std::vector<Vec3> lift_to_sphere(const SlantHelixParams& p,
                                 std::span<const double> theta_grid,
                                 const QuadConfig& cfg) {
    const std::size_t n = theta_grid.size();
    if (n < 4)
        throw InvalidParams("lift_to_sphere: need at least 4 grid points");
    for (std::size_t i = 1; i < n; ++i)
        if (!(theta_grid[i] > theta_grid[i - 1]))
            throw InvalidParams("lift_to_sphere: grid must be strictly increasing");

    const double c = std::sqrt(1.0 + p.a * p.a);
    // the planar tangent direction is (cos phi, sin phi) times sign(a):
    // d(position)/d(theta) = w T with cos(phi_pi) = sign(a) (c/R) T_x
    const double sa = p.a < 0.0 ? -1.0 : 1.0;
    const auto ds_pi = [&](double th) {
        const double R = std::sqrt(p.a * p.a + std::sin(th) * std::sin(th));
        return sa * (R / c) * speed_weight(p, th);
    };
    const auto dx = [&](double th) { return std::cos(tangent_angle(p, th)) * ds_pi(th); };
    const auto dy = [&](double th) { return std::sin(tangent_angle(p, th)) * ds_pi(th); };
    const auto dz = [&](double th) { return -(std::cos(th) / c) * speed_weight(p, th); };

    const std::vector<double> xs = cumulative_simpson(theta_grid, dx, cfg);
    const std::vector<double> ys = cumulative_simpson(theta_grid, dy, cfg);
    const std::vector<double> zs = cumulative_simpson(theta_grid, dz, cfg);

    std::vector<Vec3> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = {xs[i], ys[i], zs[i]};

    const SphereFit fit = fit_sphere(pts);
    double max_resid = 0.0;
    for (Vec3& pt : pts) {
        pt -= fit.center;
        max_resid = std::max(max_resid, std::abs(pt.norm() - 1.0));
    }
    if (max_resid >= 1e-6)
        throw SphereFitFailed("lift_to_sphere: post-fit residual >= 1e-6 "
                              "(sign-variant mismatch upstream?)", max_resid);
    return pts;
}

Rigid2D register_planar(std::span<const std::array<double, 2>> from,
                        std::span<const std::array<double, 2>> to) {
    if (from.size() != to.size() || from.size() < 2)
        throw InvalidParams("register_planar: need matched samples (>= 2)");
    const double n = static_cast<double>(from.size());
    double fcx = 0, fcy = 0, tcx = 0, tcy = 0;
    for (std::size_t i = 0; i < from.size(); ++i) {
        fcx += from[i][0]; fcy += from[i][1];
        tcx += to[i][0];   tcy += to[i][1];
    }
    fcx /= n; fcy /= n; tcx /= n; tcy /= n;

    const auto solve = [&](bool reflect) {
        // Cross-covariance of centered pairs; optimal rotation angle in closed
        // form for 2D Procrustes.
        double sxx = 0, sxy = 0, syx = 0, syy = 0;
        for (std::size_t i = 0; i < from.size(); ++i) {
            double fx = from[i][0] - fcx;
            double fy = from[i][1] - fcy;
            if (reflect) fy = -fy;
            const double tx = to[i][0] - tcx;
            const double ty = to[i][1] - tcy;
            sxx += fx * tx; sxy += fx * ty;
            syx += fy * tx; syy += fy * ty;
        }
        const double ang = std::atan2(sxy - syx, sxx + syy);
        Rigid2D r;
        const double ca = std::cos(ang), sa = std::sin(ang);
        // rotation * (optional reflection of y)
        r.r00 = ca; r.r01 = reflect ? sa : -sa;
        r.r10 = sa; r.r11 = reflect ? -ca : ca;
        r.reflected = reflect;
        r.tx = tcx - (r.r00 * fcx + r.r01 * fcy);
        r.ty = tcy - (r.r10 * fcx + r.r11 * fcy);
        double sse = 0;
        for (std::size_t i = 0; i < from.size(); ++i) {
            const auto q = r.apply(from[i]);
            const double ex = q[0] - to[i][0];
            const double ey = q[1] - to[i][1];
            sse += ex * ex + ey * ey;
        }
        return std::pair<Rigid2D, double>(r, sse);
    };

    const auto [plain, sse_plain] = solve(false);
    const auto [mirrored, sse_mirrored] = solve(true);
    return sse_mirrored < sse_plain ? mirrored : plain;
}

} // namespace helix
