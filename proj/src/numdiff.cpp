#include "helix/numdiff.hpp"

#include <cmath>

namespace helix {

namespace {

double scaled_step(double t, double base) {
    return base * std::max(1.0, std::abs(t));
}

} // namespace

double central_derivative(const std::function<double(double)>& g, double t, double h) {
    return (g(t - 2 * h) - 8.0 * g(t - h) + 8.0 * g(t + h) - g(t + 2 * h)) / (12.0 * h);
}

Vec3 derive(const CurveEvaluator& f, double t, int order, const DiffConfig& cfg) {
    cfg.validate();
    if (order < 1 || order > 3)
        throw InvalidParams("derive: order must be 1, 2 or 3");
    if (!f.contains(t))
        throw DomainExceeded("derive: t outside curve domain");

    if (f.has_analytic(order))
        return f.analytic_derivative(order, t);

    const double h = (order == 1) ? scaled_step(t, cfg.step) : cfg.step_for(order);
    // Orders 1 and 2 use the 5-point stencil t + {-2,-1,0,1,2}h; order 3 the
    // 7-point one reaching t +- 3h.
    const int reach = (order == 3) ? 3 : 2;
    if (t - reach * h < f.t_lo() || t + reach * h > f.t_hi())
        throw DomainExceeded("derive: finite-difference stencil leaves curve domain");

    const Vec3 m3 = (order == 3) ? f.point(t - 3 * h) : Vec3{};
    const Vec3 m2 = f.point(t - 2 * h);
    const Vec3 m1 = f.point(t - h);
    const Vec3 p1 = f.point(t + h);
    const Vec3 p2 = f.point(t + 2 * h);
    const Vec3 p3 = (order == 3) ? f.point(t + 3 * h) : Vec3{};

    switch (order) {
        case 1:
            return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
        case 2: {
            const Vec3 c0 = f.point(t);
            return (-1.0 * m2 + 16.0 * m1 - 30.0 * c0 + 16.0 * p1 - p2) / (12.0 * h * h);
        }
        default:
            return (m3 - 8.0 * m2 + 13.0 * m1 - 13.0 * p1 + 8.0 * p2 - p3) /
                   (8.0 * h * h * h);
    }
}

} // namespace helix
