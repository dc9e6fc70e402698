#include "helix/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "helix/frenet.hpp"
#include "helix/numdiff.hpp"
#include "helix/projection.hpp"
#include "helix/spherical.hpp"

namespace helix {

namespace {

constexpr double kGuardP = 0.02;      // min |P| (or |Q|) on the FD stencil
constexpr double kGuardHalfW = 0.04;  // stencil half-width covered by the guard

struct Harness {
    SlantHelixParams params;
    double zf = 1.0;
    double lo = 0.0, hi = 0.0;
    std::vector<double> grid;

    Vec3 pos(double th) const {
        Vec3 v = position(params, th);
        v.z *= zf;
        return v;
    }
    Vec3 dpos(double th, int k) const {
        Vec3 v = position_derivative(params, th, k);
        v.z *= zf;
        return v;
    }

    CurveEvaluator forward() const {
        CurveEvaluator c([*this](double t) { return pos(t); }, lo - 0.1, hi + 0.1);
        for (int k = 1; k <= 3; ++k)
            c.with_derivative(k, [*this, k](double t) { return dpos(t, k); });
        return c;
    }
    // canonical orientation: decreasing a*theta
    CurveEvaluator canonical() const {
        if (params.a < 0.0) return forward();
        const double sum = lo + hi;
        CurveEvaluator c([*this, sum](double t) { return pos(sum - t); }, lo - 0.1, hi + 0.1);
        for (int k = 1; k <= 3; ++k) {
            const double flip = (k % 2 == 1) ? -1.0 : 1.0;
            c.with_derivative(k, [*this, sum, k, flip](double t) { return flip * dpos(sum - t, k); });
        }
        return c;
    }
    double canonical_parameter(double th) const {
        return params.a < 0.0 ? th : lo + hi - th;
    }

    bool guard_alpha(double th) const {
        for (double d : {-kGuardHalfW, -kGuardHalfW / 2, 0.0, kGuardHalfW / 2, kGuardHalfW})
            if (std::abs(curvature_denominator(params, th + d)) < kGuardP) return false;
        return true;
    }
    bool guard_y(double th) const {
        for (double d : {-kGuardHalfW, -kGuardHalfW / 2, 0.0, kGuardHalfW / 2, kGuardHalfW})
            if (std::abs(curvature_denominator_slope(params, th + d)) < kGuardP) return false;
        return true;
    }
};

double orient_sign(const Vec3& n_numeric, const Vec3& n_closed) {
    return dot(n_numeric, n_closed) >= 0.0 ? 1.0 : -1.0;
}

double max_abs_component(const Vec3& v) {
    return std::max({std::abs(v.x), std::abs(v.y), std::abs(v.z)});
}

Vec3 frame_fd(const std::function<Vec3(double)>& f, double t, double h) {
    return (f(t - 2 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2 * h)) / (12.0 * h);
}

CheckResult make_check(const std::string& name, double err, double tol) {
    return {name, err, tol, err < tol};
}

} // namespace

bool all_pass(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& c) { return c.pass; });
}

std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
    Harness hx;
    hx.params = opt.params;
    hx.zf = opt.perturb_z;
    // The sigma and Wong stencils need clearance from the sin(theta) = 0
    // singularities beyond the closed-form guard; 0.05 keeps the 4th-order
    // cot-shaped truncation under the pinned tolerances.
    hx.lo = std::max(opt.params.theta_lo, 0.05);
    hx.hi = std::min(opt.params.theta_hi, std::numbers::pi - 0.05);
    if (!(hx.lo < hx.hi))
        throw InvalidParams("run_verification: empty working range after margins");
    const std::size_t n = std::max<std::size_t>(opt.samples, 16);
    hx.grid.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        hx.grid[i] = hx.lo + (hx.hi - hx.lo) * static_cast<double>(i) / static_cast<double>(n - 1);

    const double ts = opt.tol_scale;
    const double a = opt.params.a;
    const double c = std::sqrt(1.0 + a * a);
    const DiffConfig dcfg;
    const QuadConfig qcfg;
    const CurveEvaluator fwd = hx.forward();
    const CurveEvaluator canon = hx.canonical();

    std::vector<CheckResult> out;
    const double inf = std::numeric_limits<double>::infinity();

    // --- sphericity ---------------------------------------------------------
    {
        double err = 0.0;
        for (double th : hx.grid) err = std::max(err, std::abs(hx.pos(th).norm() - 1.0));
        out.push_back(make_check("sphericity", err, 1e-9 * ts));
    }

    // guarded sample sets
    std::vector<double> ga, gy;
    for (double th : hx.grid) {
        if (hx.guard_alpha(th)) ga.push_back(th);
        if (hx.guard_y(th)) gy.push_back(th);
    }

    // --- sigma constancy (canonical orientation, frame-resolved) ------------
    {
        double err = ga.empty() ? inf : 0.0;
        for (double th : ga) {
            const double t = hx.canonical_parameter(th);
            const FrenetData fd = frenet_apparatus(canon, t, dcfg);
            const double s = orient_sign(fd.N, frame_closed(hx.params, th).N);
            err = std::max(err, std::abs(s * sigma(canon, t, dcfg) + a));
        }
        out.push_back(make_check("sigma_constancy", err, 1e-5 * ts));
    }

    // --- closed-form frame vs numeric apparatus -----------------------------
    {
        // each axis resolved by its own sign; both frames are right-handed,
        // so the three signs must multiply to +1
        double err = ga.empty() ? inf : 0.0;
        for (double th : ga) {
            const FrenetData fd = frenet_apparatus(fwd, th, dcfg);
            const Frame fr = frame_closed(hx.params, th);
            const double sT = orient_sign(fd.T, fr.T);
            const double sN = orient_sign(fd.N, fr.N);
            const double sB = orient_sign(fd.B, fr.B);
            if (sT * sN * sB < 0) err = std::max(err, 1.0);
            err = std::max({err, max_abs_component(sT * fd.T - fr.T),
                            max_abs_component(sN * fd.N - fr.N),
                            max_abs_component(sB * fd.B - fr.B)});
        }
        out.push_back(make_check("frame_consistency", err, 1e-6 * ts));
    }

    // --- closed-form curvature / torsion vs general-parameter formulas ------
    {
        double kerr = ga.empty() ? inf : 0.0;
        double terr = ga.empty() ? inf : 0.0;
        for (double th : ga) {
            const FrenetData fd = frenet_apparatus(fwd, th, dcfg);
            const double kc = curvature_closed(hx.params, th);
            const double tc = torsion_closed(hx.params, th);
            kerr = std::max(kerr, std::abs(fd.kappa - kc) / kc);
            // kappa >= 1 bounds the apparatus scale, so a unit floor keeps the
            // ratio meaningful through tau's zero at theta = pi/2
            terr = std::max(terr, std::abs(fd.tau - tc) / std::max(std::abs(tc), 1.0));
        }
        out.push_back(make_check("curvature_consistency", kerr, 1e-6 * ts));
        out.push_back(make_check("torsion_consistency", terr, 1e-6 * ts));
    }

    // --- slant angle --------------------------------------------------------
    {
        double err = 0.0;
        for (double th : hx.grid)
            err = std::max(err, std::abs(frame_closed(hx.params, th).N.z - a / c));
        out.push_back(make_check("slant_angle_closed", err, 1e-8 * ts));

        double nerr = ga.empty() ? inf : 0.0;
        for (double th : ga) {
            const FrenetData fd = frenet_apparatus(fwd, th, dcfg);
            const double s = orient_sign(fd.N, frame_closed(hx.params, th).N);
            nerr = std::max(nerr, std::abs(s * fd.N.z - a / c));
        }
        out.push_back(make_check("slant_angle_numeric", nerr, 1e-6 * ts));
    }

    // --- frame orthonormality + Serret-Frenet residuals ---------------------
    {
        double oerr = ga.empty() ? inf : 0.0;
        double serr = ga.empty() ? inf : 0.0;
        const double h = 10.0 * dcfg.step;
        for (double th : ga) {
            const FrenetData fd = frenet_apparatus(fwd, th, dcfg);
            oerr = std::max({oerr, std::abs(dot(fd.T, fd.N)), std::abs(dot(fd.T, fd.B)),
                             std::abs(dot(fd.N, fd.B)), std::abs(fd.T.norm() - 1.0),
                             std::abs(fd.N.norm() - 1.0), std::abs(fd.B.norm() - 1.0),
                             (cross(fd.T, fd.N) - fd.B).norm()});
            const auto Tof = [&](double u) { return frenet_apparatus(fwd, u, dcfg).T; };
            const auto Nof = [&](double u) { return frenet_apparatus(fwd, u, dcfg).N; };
            const auto Bof = [&](double u) { return frenet_apparatus(fwd, u, dcfg).B; };
            const double scale = fd.nu * (fd.kappa + std::abs(fd.tau) + 1.0);
            const Vec3 rT = frame_fd(Tof, th, h) - fd.nu * fd.kappa * fd.N;
            const Vec3 rN = frame_fd(Nof, th, h) -
                            fd.nu * (-fd.kappa * fd.T + fd.tau * fd.B);
            const Vec3 rB = frame_fd(Bof, th, h) + fd.nu * fd.tau * fd.N;
            serr = std::max({serr, rT.norm() / scale, rN.norm() / scale, rB.norm() / scale});
        }
        out.push_back(make_check("frame_orthonormality", oerr, 1e-8 * ts));
        out.push_back(make_check("serret_frenet_residuals", serr, 1e-5 * ts));
    }

    // --- Wong sphericity criteria -------------------------------------------
    {
        double rerr = 0.0;
        bool any_r = false;
        for (double th : ga) {
            try {
                rerr = std::max(rerr, std::abs(wong_radius(fwd, th, dcfg) - 1.0));
                any_r = true;
            } catch (const TorsionDegenerate&) {
            }
        }
        out.push_back(make_check("wong_radius_unit", any_r ? rerr : inf, 1e-6 * ts));

        double oerr = ga.empty() ? inf : 0.0;
        for (double th : ga) {
            try {
                oerr = std::max(oerr, std::abs(wong_ode_residual(fwd, th, dcfg)));
            } catch (const TorsionDegenerate&) {
            }
        }
        out.push_back(make_check("wong_ode_residual", oerr, 1e-4 * ts));

        // criterion (4) on the longest sign-constant stretch of P
        std::vector<double> stretch, best;
        for (double th : ga) {
            if (!stretch.empty() &&
                curvature_denominator(hx.params, th) *
                        curvature_denominator(hx.params, stretch.back()) < 0) {
                if (stretch.size() > best.size()) best = stretch;
                stretch.clear();
            }
            stretch.push_back(th);
        }
        if (stretch.size() > best.size()) best = stretch;
        if (best.size() >= 8) {
            const WongReport rep = wong_fit(fwd, best, qcfg, dcfg);
            out.push_back(make_check("wong_fit_identity",
                                     std::abs(rep.fitted_r * rep.fitted_r - 1.0), 1e-6 * ts));
            out.push_back(make_check("wong_fit_residual", rep.fit_residual, 1e-6 * ts));
        } else {
            out.push_back(make_check("wong_fit_identity", inf, 1e-6 * ts));
            out.push_back(make_check("wong_fit_residual", inf, 1e-6 * ts));
        }
    }

    // --- projection ----------------------------------------------------------
    {
        const Vec3 axis{0.0, 0.0, 1.0};
        const CurveEvaluator proj = projected_curve(fwd, axis);
        double kerr = ga.empty() ? inf : 0.0;
        double terr = 0.0, verr = ga.empty() ? inf : 0.0, perr = ga.empty() ? inf : 0.0;
        for (double th : ga) {
            const double kc = curvature_closed(hx.params, th);
            const double kpi = projection_curvature(hx.params, th, kc);
            const FrenetData fp = frenet_apparatus(proj, th, dcfg);
            kerr = std::max(kerr, std::abs(fp.kappa - kpi) / kpi);
            terr = std::max(terr, std::abs(fp.tau));
            const double R = std::sqrt(a * a + std::sin(th) * std::sin(th));
            const double vp = derive(proj, th, 1, dcfg).norm();
            const double v = derive(fwd, th, 1, dcfg).norm();
            verr = std::max(verr, std::abs(vp - (R / c) * v) / ((R / c) * v));
            const double dphi = central_derivative(
                [&](double u) { return tangent_angle(hx.params, u); }, th, 10.0 * dcfg.step);
            const double w = std::abs(speed_weight(hx.params, th));
            const double sa = a < 0.0 ? -1.0 : 1.0;
            perr = std::max(perr, std::abs(dphi - sa * kpi * (R / c) * w));
        }
        out.push_back(make_check("projection_curvature", kerr, 1e-5 * ts));
        out.push_back(make_check("projection_torsion", terr, 1e-8 * ts));
        out.push_back(make_check("projection_speed_relation", verr, 1e-6 * ts));
        out.push_back(make_check("tangent_angle_consistency", perr, 1e-6 * ts));
    }

    // --- reconstruction round trip -------------------------------------------
    {
        double err;
        try {
            const std::vector<Vec3> lifted = lift_to_sphere(hx.params, hx.grid, qcfg);
            err = 0.0;
            for (std::size_t i = 0; i < hx.grid.size(); ++i)
                err = std::max(err, (lifted[i] - hx.pos(hx.grid[i])).norm());
        } catch (const SphereFitFailed& e) {
            err = e.residual;
        }
        out.push_back(make_check("reconstruction_roundtrip", err, 1e-6 * ts));
    }

    // --- Y indicatrix ----------------------------------------------------------
    {
        double nerr = 0.0;
        for (double th : hx.grid)
            nerr = std::max(nerr, std::abs(y_indicatrix(hx.params, th).norm() - 1.0));
        out.push_back(make_check("y_norm", nerr, 1e-10 * ts));

        const CurveEvaluator yc = y_curve(hx.params, hx.lo - 0.1, hx.hi + 0.1);
        double serr = gy.empty() ? inf : 0.0;
        for (double th : gy) {
            const double t = y_parameter(hx.params, hx.lo - 0.1, hx.hi + 0.1, th);
            const FrenetData fd = frenet_apparatus(yc, t, dcfg);
            const double s = orient_sign(fd.N, frame_closed(hx.params, th).N);
            serr = std::max(serr, std::abs(s * sigma(yc, t, dcfg) - a));
        }
        out.push_back(make_check("y_sigma", serr, 1e-5 * ts));

        double cerr = 0.0;
        bool any = false;
        for (double th : gy) {
            if (!hx.guard_alpha(th)) continue;
            const double kc = curvature_closed(hx.params, th);
            if (kc <= 1.0 + 1e-6) continue;
            const IndicatrixCurvatures ref = y_curvatures(kc, torsion_closed(hx.params, th), a);
            const FrenetData fd =
                frenet_apparatus(yc, y_parameter(hx.params, hx.lo - 0.1, hx.hi + 0.1, th), dcfg);
            cerr = std::max(cerr, std::abs(fd.kappa - ref.kappa) / ref.kappa);
            cerr = std::max(cerr, std::abs(std::abs(fd.tau) - std::abs(ref.tau)) /
                                      std::max(std::abs(ref.tau), 1.0));
            // the signed relation holds where P and Q have opposite signs
            if (curvature_denominator(hx.params, th) *
                    curvature_denominator_slope(hx.params, th) < 0)
                cerr = std::max(cerr, std::abs(fd.tau - ref.tau) /
                                          std::max(std::abs(ref.tau), 1.0));
            any = true;
        }
        out.push_back(make_check("y_curvature_consistency", any ? cerr : inf, 1e-5 * ts));
    }

    // --- closure probe ---------------------------------------------------------
    {
        const ClosureResult cl = is_closed(hx.params);
        if (cl.rational) {
            double err = 0.0;
            for (int i = 0; i < 100; ++i) {
                const double th = hx.lo + (hx.hi - hx.lo) * static_cast<double>(i) / 99.0;
                err = std::max(err, (hx.pos(th + cl.theta_period) - hx.pos(th)).norm());
            }
            out.push_back(make_check("closure_probe", err, 1e-9 * ts));
        }
    }

    return out;
}

} // namespace helix
