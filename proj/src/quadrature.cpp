#include "helix/quadrature.hpp"

#include <cmath>

#include "helix/errors.hpp"

namespace helix {

namespace {

struct SimpsonState {
    const ScalarFn& g;
    const QuadConfig& cfg;
    int used = 0;
};

double simpson(double h, double fa, double fm, double fb) {
    return (fa + 4.0 * fm + fb) * (h / 6.0);
}

double simpson_adaptive(SimpsonState& st, double a, double m, double b,
                        double fa, double fm, double fb, double whole, double tol) {
    if (++st.used > st.cfg.max_subdivisions)
        throw ToleranceNotMet("integrate: max subdivisions exhausted (singular integrand?)");
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.g(lm);
    const double frm = st.g(rm);
    const double left = simpson(m - a, fa, flm, fm);
    const double right = simpson(b - m, fm, frm, fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    const double half = 0.5 * tol;
    return simpson_adaptive(st, a, lm, m, fa, flm, fm, left, half) +
           simpson_adaptive(st, m, rm, b, fm, frm, fb, right, half);
}

// Integrals over [x0,x1] and [x1,x2] of the parabola through three samples.
// Reduces to the 5/12, 8/12, -1/12 rule on uniform grids.
void parabola_increments(double h0, double h1, double y0, double y1, double y2,
                         double& left, double& right) {
    left = y0 * h0 * (2.0 * h0 + 3.0 * h1) / (6.0 * (h0 + h1)) +
           y1 * h0 * (h0 + 3.0 * h1) / (6.0 * h1) -
           y2 * h0 * h0 * h0 / (6.0 * (h0 + h1) * h1);
    right = y2 * h1 * (2.0 * h1 + 3.0 * h0) / (6.0 * (h0 + h1)) +
            y1 * h1 * (h1 + 3.0 * h0) / (6.0 * h0) -
            y0 * h1 * h1 * h1 / (6.0 * (h0 + h1) * h0);
}

} // namespace

double integrate(const ScalarFn& g, double lo, double hi, const QuadConfig& cfg) {
    cfg.validate();
    if (!(lo <= hi))
        throw InvalidParams("integrate: lo must be <= hi");
    if (lo == hi)
        return 0.0;

    const double m = 0.5 * (lo + hi);
    const double fa = g(lo);
    const double fm = g(m);
    const double fb = g(hi);
    const double whole = simpson(hi - lo, fa, fm, fb);
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(whole));
    SimpsonState st{g, cfg};
    return simpson_adaptive(st, lo, m, hi, fa, fm, fb, whole, tol);
}

std::vector<double> cumulative_simpson(std::span<const double> x,
                                       std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2)
        throw InvalidParams("cumulative_simpson: need matching grids with >= 2 points");
    std::vector<double> out(n, 0.0);
    if (n == 2) {
        out[1] = 0.5 * (x[1] - x[0]) * (y[0] + y[1]);
        return out;
    }
    std::size_t i = 0;
    while (i + 2 < n) {
        double left, right;
        parabola_increments(x[i + 1] - x[i], x[i + 2] - x[i + 1], y[i], y[i + 1], y[i + 2],
                            left, right);
        out[i + 1] = out[i] + left;
        out[i + 2] = out[i + 1] + right;
        i += 2;
    }
    if (i + 1 < n) {
        // odd interval count: integrate the final interval from the parabola
        // through the last three points
        double left, right;
        parabola_increments(x[n - 2] - x[n - 3], x[n - 1] - x[n - 2], y[n - 3], y[n - 2],
                            y[n - 1], left, right);
        out[n - 1] = out[n - 2] + right;
    }
    return out;
}

std::vector<double> cumulative_simpson(std::span<const double> x, const ScalarFn& g,
                                       const QuadConfig& cfg) {
    cfg.validate();
    const std::size_t n = x.size();
    if (n < 2)
        throw InvalidParams("cumulative_simpson: need >= 2 grid points");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = g(x[i]);
    std::vector<double> out = cumulative_simpson(x, y);

    // Refine any interval whose midpoint-Simpson estimate disagrees with the
    // parabolic increment beyond tolerance.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = x[i], b = x[i + 1];
        const double inc = out[i + 1] - out[i];
        const double fm = g(0.5 * (a + b));
        const double check = simpson(b - a, y[i], fm, y[i + 1]);
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(check));
        if (std::abs(check - inc) > tol) {
            const double refined = integrate(g, a, b, cfg);
            const double shift = refined - inc;
            for (std::size_t j = i + 1; j < n; ++j) out[j] += shift;
        }
    }
    return out;
}

} // namespace helix
