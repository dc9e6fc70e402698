#include "helix/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "helix/numdiff.hpp"
#include "helix/quadrature.hpp"

namespace helix {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double inv_kappa(const CurveEvaluator& curve, double t, const DiffConfig& cfg) {
    return 1.0 / frenet_apparatus(curve, t, cfg).kappa;
}

// (1/(nu tau)) (1/kappa)' at t; throws TorsionDegenerate below the threshold.
double wong_inner(const CurveEvaluator& curve, double t, const DiffConfig& cfg) {
    const FrenetData fd = frenet_apparatus(curve, t, cfg);
    if (std::abs(fd.tau) <= kEpsTorsion)
        throw TorsionDegenerate("wong: |tau| <= eps_torsion, criterion inapplicable");
    const double h = 10.0 * cfg.step;
    const double dinvk =
        central_derivative([&](double u) { return inv_kappa(curve, u, cfg); }, t, h);
    return dinvk / (fd.nu * fd.tau);
}

// 2nd-order nonuniform central difference on three samples.
double grid_derivative(double x0, double x1, double x2, double f0, double f1, double f2) {
    const double h0 = x1 - x0, h1 = x2 - x1;
    return -h1 / (h0 * (h0 + h1)) * f0 + (h1 - h0) / (h0 * h1) * f1 +
           h0 / (h1 * (h0 + h1)) * f2;
}

} // namespace

SabbanFrame sabban_frame(const CurveEvaluator& curve, double t, const DiffConfig& cfg) {
    SabbanFrame f;
    f.alpha = curve.point(t);
    if (std::abs(f.alpha.norm() - 1.0) >= 1e-6)
        throw NotOnSphere("sabban_frame: point not on the unit sphere");
    const Vec3 d1 = derive(curve, t, 1, cfg);
    const double nu = d1.norm();
    if (nu < kEpsSpeed)
        throw SpeedZero("sabban_frame: ||alpha'|| below eps_speed");
    f.T = d1 / nu;
    f.Y = cross(f.alpha, f.T);
    return f;
}

double wong_radius(const CurveEvaluator& curve, double t, const DiffConfig& cfg) {
    const FrenetData fd = frenet_apparatus(curve, t, cfg);
    const double inner = wong_inner(curve, t, cfg);
    const double rho = 1.0 / fd.kappa;
    return rho * rho + inner * inner;
}

double wong_ode_residual(const CurveEvaluator& curve, double t, const DiffConfig& cfg) {
    const FrenetData fd = frenet_apparatus(curve, t, cfg);
    const double h = 10.0 * cfg.step;
    const double dinner =
        central_derivative([&](double u) { return wong_inner(curve, u, cfg); }, t, h);
    return dinner / fd.nu + fd.tau / fd.kappa;
}

std::vector<double> wong_ode_residual_stream(std::span<const FrenetData> stream) {
    const std::size_t n = stream.size();
    std::vector<double> out(n, kNaN);
    if (n < 5) return out;
    std::vector<double> inner(n, kNaN);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (std::abs(stream[i].tau) <= kEpsTorsion) continue;
        const double d = grid_derivative(stream[i - 1].t, stream[i].t, stream[i + 1].t,
                                         1.0 / stream[i - 1].kappa, 1.0 / stream[i].kappa,
                                         1.0 / stream[i + 1].kappa);
        inner[i] = d / (stream[i].nu * stream[i].tau);
    }
    for (std::size_t i = 2; i + 2 < n; ++i) {
        if (std::isnan(inner[i - 1]) || std::isnan(inner[i]) || std::isnan(inner[i + 1]))
            continue;
        const double d = grid_derivative(stream[i - 1].t, stream[i].t, stream[i + 1].t,
                                         inner[i - 1], inner[i], inner[i + 1]);
        out[i] = d / stream[i].nu + stream[i].tau / stream[i].kappa;
    }
    return out;
}

WongReport wong_fit(const CurveEvaluator& curve, std::span<const double> grid,
                    const QuadConfig& /*Phi integrates sampled nu*tau on the caller's grid*/,
                    const DiffConfig& dcfg, const WongConfig& wcfg) {
    const std::size_t n = grid.size();
    WongReport rep;
    rep.r2_samples.assign(n, kNaN);
    rep.ode_residuals.assign(n, kNaN);

    std::vector<FrenetData> fds(n);
    std::vector<bool> ok(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        try {
            fds[i] = frenet_apparatus(curve, grid[i], dcfg);
            ok[i] = true;
            ++rep.valid_samples;
        } catch (const Error& e) {
            rep.skipped.push_back("t=" + std::to_string(grid[i]) + ": " + e.what());
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!ok[i]) continue;
        try {
            rep.r2_samples[i] = wong_radius(curve, grid[i], dcfg);
        } catch (const Error&) {
        }
        try {
            rep.ode_residuals[i] = wong_ode_residual(curve, grid[i], dcfg);
        } catch (const Error&) {
        }
    }

    double r2_sum = 0.0;
    std::size_t r2_n = 0;
    for (double v : rep.r2_samples)
        if (!std::isnan(v)) { r2_sum += v; ++r2_n; }
    if (r2_n > 0) {
        rep.r2_applicable = true;
        rep.r2_mean = r2_sum / static_cast<double>(r2_n);
        for (double v : rep.r2_samples)
            if (!std::isnan(v))
                rep.r2_max_dev = std::max(rep.r2_max_dev, std::abs(v - rep.r2_mean));
        rep.radius_constant = rep.r2_max_dev < wcfg.r2_tol;
    }
    for (double v : rep.ode_residuals)
        if (!std::isnan(v)) rep.ode_max_abs = std::max(rep.ode_max_abs, std::abs(v));
    rep.ode_pass = rep.ode_max_abs < wcfg.ode_tol;

    // Criterion (4) on the longest contiguous valid run (the cumulative Phi
    // integral needs unbroken data).
    std::size_t best_lo = 0, best_len = 0, run_lo = 0, run_len = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        if (i < n && ok[i]) {
            if (run_len == 0) run_lo = i;
            ++run_len;
            if (run_len > best_len) { best_len = run_len; best_lo = run_lo; }
        } else {
            run_len = 0;
        }
    }
    if (best_len >= wcfg.min_fit_samples) {
        std::vector<double> ts(best_len), nutau(best_len), rho(best_len);
        for (std::size_t i = 0; i < best_len; ++i) {
            const FrenetData& fd = fds[best_lo + i];
            ts[i] = fd.t;
            nutau[i] = fd.nu * fd.tau;
            rho[i] = 1.0 / fd.kappa;
        }
        const std::vector<double> phi = cumulative_simpson(ts, nutau);
        double scc = 0, scs = 0, sss = 0, scy = 0, ssy = 0;
        for (std::size_t i = 0; i < best_len; ++i) {
            const double cp = std::cos(phi[i]);
            const double sp = std::sin(phi[i]);
            scc += cp * cp; scs += cp * sp; sss += sp * sp;
            scy += cp * rho[i]; ssy += sp * rho[i];
        }
        // Minimum-norm least squares through the 2x2 eigendecomposition of the
        // normal matrix: when Phi is nearly constant (tau ~ 0) the cos/sin
        // columns are collinear and only the dominant direction is invertible.
        {
            const double tr = scc + sss;
            const double disc = std::sqrt(std::max(0.0, (scc - sss) * (scc - sss) / 4.0 +
                                                            scs * scs));
            const double l1 = tr / 2.0 + disc;
            const double l2 = tr / 2.0 - disc;
            double v1x, v1y;
            if (std::abs(scs) > 1e-300) {
                v1x = l1 - sss;
                v1y = scs;
            } else {
                v1x = scc >= sss ? 1.0 : 0.0;
                v1y = scc >= sss ? 0.0 : 1.0;
            }
            const double n1 = std::hypot(v1x, v1y);
            v1x /= n1; v1y /= n1;
            const double v2x = -v1y, v2y = v1x;
            const double b1 = scy * v1x + ssy * v1y;
            const double b2 = scy * v2x + ssy * v2y;
            const double c1 = b1 / l1;
            const double c2 = (l2 > 1e-12 * l1) ? b2 / l2 : 0.0;
            rep.fitted_A = c1 * v1x + c2 * v2x;
            rep.fitted_B = c1 * v1y + c2 * v2y;
        }
        rep.fitted_r = std::hypot(rep.fitted_A, rep.fitted_B);
        double sse = 0;
        for (std::size_t i = 0; i < best_len; ++i) {
            const double e = rho[i] - rep.fitted_A * std::cos(phi[i]) -
                             rep.fitted_B * std::sin(phi[i]);
            sse += e * e;
        }
        rep.fit_residual = std::sqrt(sse / static_cast<double>(best_len));
        rep.fit_pass = rep.fit_residual < wcfg.fit_tol;
    }

    rep.spherical = rep.ode_pass && rep.fit_pass &&
                    (!rep.r2_applicable || rep.radius_constant);
    return rep;
}

Vec3 y_indicatrix(const SlantHelixParams& p, double theta) {
    const Frame fr = frame_closed(p, theta);
    const double P = curvature_denominator(p, theta);
    const double Q = curvature_denominator_slope(p, theta);
    return Q * fr.N + P * fr.B; // equals position x T
}

Vec3 y_indicatrix_derivative(const SlantHelixParams& p, double theta, int order) {
    const Frame fr = frame_closed(p, theta);
    const double P = curvature_denominator(p, theta);
    const double Q = curvature_denominator_slope(p, theta);
    const double a = p.a;
    const double s = std::sin(theta), co = std::cos(theta);
    switch (order) {
        case 1:
            return -(s / a) * Q * fr.T;
        case 2: {
            const double g1 = -(co / a) * (Q - s * P / a);
            const double g2 = -(s * s * Q / (a * a));
            return g1 * fr.T + g2 * fr.N;
        }
        case 3: {
            const double g1 = -(co / a) * (Q - s * P / a);
            const double g2 = -(s * s * Q / (a * a));
            const double g1p = (s / a) * (Q - s * P / a) +
                               (co * co / (a * a)) * (2.0 * P + s * Q / a);
            const double g2p = -(s * co / (a * a)) * (2.0 * Q - s * P / a);
            return (g1p - g2 * s / a) * fr.T + (g1 * s / a + g2p) * fr.N -
                   (g2 * co / a) * fr.B;
        }
        default:
            throw InvalidParams("y_indicatrix_derivative: order must be 1, 2 or 3");
    }
}

CurveEvaluator y_curve(const SlantHelixParams& p, double theta_lo, double theta_hi) {
    // opposite traversal to family_curve: increasing a*theta, so that the
    // numeric sigma of Y comes out +a for either sign of a
    if (p.a < 0.0) {
        const double sum = theta_lo + theta_hi;
        CurveEvaluator c([p, sum](double t) { return y_indicatrix(p, sum - t); }, theta_lo,
                         theta_hi);
        c.with_derivative(1, [p, sum](double t) {
            return -1.0 * y_indicatrix_derivative(p, sum - t, 1);
        });
        c.with_derivative(2, [p, sum](double t) {
            return y_indicatrix_derivative(p, sum - t, 2);
        });
        c.with_derivative(3, [p, sum](double t) {
            return -1.0 * y_indicatrix_derivative(p, sum - t, 3);
        });
        return c;
    }
    CurveEvaluator c([p](double t) { return y_indicatrix(p, t); }, theta_lo, theta_hi);
    c.with_derivative(1, [p](double t) { return y_indicatrix_derivative(p, t, 1); });
    c.with_derivative(2, [p](double t) { return y_indicatrix_derivative(p, t, 2); });
    c.with_derivative(3, [p](double t) { return y_indicatrix_derivative(p, t, 3); });
    return c;
}

double y_parameter(const SlantHelixParams& p, double theta_lo, double theta_hi,
                   double theta) {
    return p.a < 0.0 ? theta_lo + theta_hi - theta : theta;
}

IndicatrixCurvatures y_curvatures(double kappa, double tau, double a) {
    if (!(kappa > 1.0 + kEpsCurv))
        throw CurvatureDegenerate("y_curvatures: kappa must exceed 1 (great-circle contact)");
    const double root = std::sqrt(kappa * kappa - 1.0);
    return {kappa / root, tau / root, a};
}

} // namespace helix
