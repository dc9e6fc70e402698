#include "helix/frenet.hpp"

#include <algorithm>
#include <cmath>

namespace helix {

FrenetData frenet_apparatus(const CurveEvaluator& curve, double t, const DiffConfig& cfg) {
    const Vec3 d1 = derive(curve, t, 1, cfg);
    const Vec3 d2 = derive(curve, t, 2, cfg);
    const Vec3 d3 = derive(curve, t, 3, cfg);

    FrenetData fd;
    fd.t = t;
    fd.nu = d1.norm();
    if (fd.nu < kEpsSpeed)
        throw SpeedZero("frenet_apparatus: ||alpha'|| below eps_speed");

    const Vec3 cr = cross(d1, d2);
    const double ncr = cr.norm();
    const double nu3 = fd.nu * fd.nu * fd.nu;
    if (ncr < kEpsRankRel * nu3)
        throw NormalUndefined("frenet_apparatus: ||alpha' x alpha''|| ~ 0, N/B/tau undefined");

    fd.T = d1 / fd.nu;
    fd.B = cr / ncr;
    fd.N = cross(fd.B, fd.T); // guarantees right-handedness
    fd.kappa = ncr / nu3;
    fd.tau = det3(d1, d2, d3) / (ncr * ncr);
    return fd;
}

double sigma(const CurveEvaluator& curve, double t, const DiffConfig& cfg) {
    const FrenetData fd = frenet_apparatus(curve, t, cfg);
    const double k2t2 = fd.kappa * fd.kappa + fd.tau * fd.tau;
    if (k2t2 < 1e-24)
        throw TorsionCurvatureDegenerate("sigma: kappa^2 + tau^2 ~ 0");

    // Unscaled step: tau/kappa ~ cot(theta) for the curves of interest, whose
    // higher derivatives blow up near the domain ends regardless of |t|.
    const double h = 10.0 * cfg.step;
    const auto tau_over_kappa = [&](double u) {
        const FrenetData g = frenet_apparatus(curve, u, cfg);
        return g.tau / g.kappa;
    };
    const double ratio_prime = central_derivative(tau_over_kappa, t, h);
    return fd.kappa * fd.kappa / (fd.nu * std::pow(k2t2, 1.5)) * ratio_prime;
}

SlantAxis slant_axis(const CurveEvaluator& curve, double t, double a,
                     const DiffConfig& cfg) {
    if (a == 0.0)
        throw InvalidParams("slant_axis: a must be nonzero");
    const FrenetData fd = frenet_apparatus(curve, t, cfg);
    const double k2t2 = fd.kappa * fd.kappa + fd.tau * fd.tau;
    if (k2t2 < 1e-24)
        throw TorsionCurvatureDegenerate("slant_axis: kappa^2 + tau^2 ~ 0");
    const double s = std::sqrt(k2t2);
    SlantAxis ax;
    ax.u = fd.T * (fd.tau / (a * s)) + fd.N + fd.B * (fd.kappa / (a * s));
    ax.unit = normalized(ax.u);
    return ax;
}

SlantReport slant_report(const CurveEvaluator& curve, std::span<const double> grid,
                         const DiffConfig& cfg, double tol) {
    SlantReport rep;
    rep.samples.reserve(grid.size());
    for (double t : grid) {
        SlantSample s;
        s.t = t;
        try {
            const FrenetData fd = frenet_apparatus(curve, t, cfg);
            s.sigma = sigma(curve, t, cfg);
            s.normal = fd.N;
            s.ok = true;
            ++rep.valid_count;
        } catch (const Error& e) {
            s.status = e.what();
        }
        rep.samples.push_back(std::move(s));
    }
    if (rep.valid_count * 2 < grid.size())
        throw Error("slant_report: fewer than 50% of grid points valid");

    double sum = 0.0;
    for (const auto& s : rep.samples)
        if (s.ok) sum += s.sigma;
    rep.sigma_mean = sum / static_cast<double>(rep.valid_count);
    for (const auto& s : rep.samples)
        if (s.ok) rep.sigma_max_dev = std::max(rep.sigma_max_dev, std::abs(s.sigma - rep.sigma_mean));

    // Axis from the median valid sample, with a = mean sigma (the oriented
    // curve's slant constant). Degenerate sigma ~ 0 (general helices) has no
    // axis in this form; leave it zero.
    if (std::abs(rep.sigma_mean) > 1e-9) {
        std::vector<std::size_t> valid;
        for (std::size_t i = 0; i < rep.samples.size(); ++i)
            if (rep.samples[i].ok) valid.push_back(i);
        const std::size_t mid = valid[valid.size() / 2];
        try {
            rep.axis = slant_axis(curve, rep.samples[mid].t, rep.sigma_mean, cfg).unit;
            for (auto& s : rep.samples)
                if (s.ok) s.axis_cos = dot(s.normal, rep.axis);
        } catch (const Error&) {
            // axis left zero; sigma statistics stand on their own
        }
    }
    rep.is_slant_helix = rep.sigma_max_dev < tol;
    return rep;
}

} // namespace helix
