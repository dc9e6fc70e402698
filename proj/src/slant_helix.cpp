#include "helix/slant_helix.hpp"

#include <algorithm>
#include <cmath>

namespace helix {

namespace {

constexpr double kPi = std::numbers::pi;

struct FamilyTerms {
    double P, Q;        // A cos u + B sin u and B cos u - A sin u, u = sin(theta)/a
    double w, wp, wpp;  // speed weight and its first two theta-derivatives
    double c;           // sqrt(1 + a^2)
    double m;           // c / a
    double phi;         // m * theta
};

FamilyTerms terms(const SlantHelixParams& p, double theta) {
    FamilyTerms f;
    const double a = p.a;
    f.c = std::sqrt(1.0 + a * a);
    f.m = f.c / a;
    f.phi = f.m * theta;
    const double u = std::sin(theta) / a;
    const double cu = std::cos(u), su = std::sin(u);
    f.P = p.A * cu + p.B * su;
    f.Q = p.B * cu - p.A * su;
    const double s = std::sin(theta), co = std::cos(theta);
    f.w = s * f.P / a;
    f.wp = co * (f.P + s * f.Q / a) / a;
    f.wpp = (-s * (a * f.P + s * f.Q) + co * (2.0 * f.Q * co - s * co * f.P / a)) / (a * a);
    return f;
}

} // namespace

SlantHelixParams SlantHelixParams::make(double a, double A, double B) {
    SlantHelixParams p;
    if (a == 0.0 || !std::isfinite(a))
        throw InvalidParams("SlantHelixParams: a must be finite and nonzero");
    const double n = std::hypot(A, B);
    if (std::abs(n - 1.0) >= 1e-9)
        throw InvalidParams("SlantHelixParams: A^2 + B^2 must equal 1 (got ||(A,B)|| off by >= 1e-9)");
    p.a = a;
    p.A = A / n;
    p.B = B / n;
    return p;
}

SlantHelixParams SlantHelixParams::make(double a, double A, double B,
                                        double theta_lo, double theta_hi) {
    SlantHelixParams p = make(a, A, B);
    if (!(theta_lo > 0.0 && theta_lo < theta_hi && theta_hi < kPi))
        throw InvalidParams("SlantHelixParams: theta domain must lie within (0, pi)");
    p.theta_lo = theta_lo;
    p.theta_hi = theta_hi;
    return p;
}

double curvature_denominator(const SlantHelixParams& p, double theta) {
    const double u = std::sin(theta) / p.a;
    return p.A * std::cos(u) + p.B * std::sin(u);
}

double curvature_denominator_slope(const SlantHelixParams& p, double theta) {
    const double u = std::sin(theta) / p.a;
    return p.B * std::cos(u) - p.A * std::sin(u);
}

Vec3 position(const SlantHelixParams& p, double theta) {
    const FamilyTerms f = terms(p, theta);
    const double s = std::sin(theta), co = std::cos(theta);
    const double cp = std::cos(f.phi), sp = std::sin(f.phi);
    // Sign variant frozen by ||alpha|| = 1 and by agreement with the
    // quadrature reconstruction pipeline (see the golden fixtures).
    const double mix = (f.P + p.a * s * f.Q) / f.c;
    return {co * sp * f.Q - cp * mix,
            -co * cp * f.Q - sp * mix,
            (-p.a * f.P + s * f.Q) / f.c};
}

Frame frame_closed(const SlantHelixParams& p, double theta) {
    const FamilyTerms f = terms(p, theta);
    const double s = std::sin(theta), co = std::cos(theta);
    const double cp = std::cos(f.phi), sp = std::sin(f.phi);
    const double aoc = p.a / f.c;
    Frame fr;
    fr.T = {aoc * co * cp + s * sp, aoc * co * sp - s * cp, -co / f.c};
    fr.N = {cp / f.c, sp / f.c, aoc};
    fr.B = {-aoc * s * cp + co * sp, -aoc * s * sp - co * cp, s / f.c};
    return fr;
}

Vec3 position_derivative(const SlantHelixParams& p, double theta, int order) {
    const FamilyTerms f = terms(p, theta);
    const Frame fr = frame_closed(p, theta);
    const double a = p.a;
    const double s = std::sin(theta), co = std::cos(theta);
    switch (order) {
        case 1:
            return f.w * fr.T;
        case 2:
            return f.wp * fr.T + (f.w * s / a) * fr.N;
        case 3:
            return (f.wpp - f.w * s * s / (a * a)) * fr.T +
                   (2.0 * f.wp * s / a + f.w * co / a) * fr.N -
                   (f.w * s * co / (a * a)) * fr.B;
        default:
            throw InvalidParams("position_derivative: order must be 1, 2 or 3");
    }
}

double curvature_closed(const SlantHelixParams& p, double theta) {
    const double P = curvature_denominator(p, theta);
    if (std::abs(P) < kEpsCurv)
        throw CurvatureSingular("curvature_closed: |A cos + B sin| below eps_curv");
    return 1.0 / std::abs(P);
}

double torsion_closed(const SlantHelixParams& p, double theta) {
    const double s = std::sin(theta);
    if (std::abs(s) < kThetaGuard)
        throw ParameterSingular("torsion_closed: sin(theta) ~ 0 (cot blows up, speed vanishes)");
    const double P = curvature_denominator(p, theta);
    if (std::abs(P) < kEpsCurv)
        throw CurvatureSingular("torsion_closed: |A cos + B sin| below eps_curv");
    return -(std::cos(theta) / s) / P;
}

double speed_weight(const SlantHelixParams& p, double theta) {
    return std::sin(theta) * curvature_denominator(p, theta) / p.a;
}

double arc_length(const SlantHelixParams& p, double theta0, double theta1,
                  const QuadConfig& cfg) {
    if (!(theta0 <= theta1))
        throw InvalidParams("arc_length: theta0 must be <= theta1");
    if (theta0 == theta1) return 0.0;
    const auto speed = [&](double th) { return std::abs(speed_weight(p, th)); };
    // |w| has kinks at multiples of pi; split there so the adaptive rule
    // converges fast.
    double total = 0.0;
    double lo = theta0;
    double k = std::ceil(theta0 / kPi);
    for (double cut = k * kPi; cut < theta1; cut += kPi) {
        if (cut > lo) {
            total += integrate(speed, lo, cut, cfg);
            lo = cut;
        }
    }
    total += integrate(speed, lo, theta1, cfg);
    return total;
}

CurveEvaluator family_curve(const SlantHelixParams& p, double theta_lo, double theta_hi) {
    if (p.a < 0.0) return family_curve_forward(p, theta_lo, theta_hi);
    const double sum = theta_lo + theta_hi;
    CurveEvaluator c([p, sum](double t) { return position(p, sum - t); }, theta_lo, theta_hi);
    c.with_derivative(1, [p, sum](double t) { return -1.0 * position_derivative(p, sum - t, 1); });
    c.with_derivative(2, [p, sum](double t) { return position_derivative(p, sum - t, 2); });
    c.with_derivative(3, [p, sum](double t) { return -1.0 * position_derivative(p, sum - t, 3); });
    return c;
}

CurveEvaluator family_curve(const SlantHelixParams& p) {
    return family_curve(p, p.theta_lo, p.theta_hi);
}

double family_parameter(const SlantHelixParams& p, double theta_lo, double theta_hi,
                        double theta) {
    return p.a < 0.0 ? theta : theta_lo + theta_hi - theta;
}

CurveEvaluator family_curve_forward(const SlantHelixParams& p, double theta_lo,
                                    double theta_hi) {
    CurveEvaluator c([p](double t) { return position(p, t); }, theta_lo, theta_hi);
    c.with_derivative(1, [p](double t) { return position_derivative(p, t, 1); });
    c.with_derivative(2, [p](double t) { return position_derivative(p, t, 2); });
    c.with_derivative(3, [p](double t) { return position_derivative(p, t, 3); });
    return c;
}

ThetaRecovery theta_characterization(std::span<const FrenetData> stream) {
    if (stream.size() < 3)
        throw InvalidParams("theta_characterization: need at least 3 samples");
    ThetaRecovery rec;
    rec.theta.reserve(stream.size());
    for (const auto& fd : stream) {
        if (!(fd.kappa > 0.0))
            throw InvalidParams("theta_characterization: kappa must be > 0 at all samples");
        rec.theta.push_back(std::atan2(fd.kappa, fd.tau));
    }
    double span_max = rec.theta[0], span_min = rec.theta[0];
    for (std::size_t i = 1; i < rec.theta.size(); ++i) {
        const double jump = rec.theta[i] - rec.theta[i - 1];
        if (std::abs(jump) > kPi / 2.0)
            throw UnwrapFailed("theta_characterization: consecutive theta jump exceeds pi/2");
        span_max = std::max(span_max, rec.theta[i]);
        span_min = std::min(span_min, rec.theta[i]);
    }
    // finite-difference-sourced streams carry ~1e-9 jitter in kappa and tau;
    // anything below this span is a general helix for recovery purposes
    if (span_max - span_min < 1e-6)
        throw TorsionCurvatureDegenerate(
            "theta_characterization: theta constant (tau/kappa constant), slope degenerate");

    rec.a_samples.reserve(stream.size() - 2);
    double sum = 0.0;
    for (std::size_t i = 1; i + 1 < stream.size(); ++i) {
        const double dt = stream[i + 1].t - stream[i - 1].t;
        const double dtheta = rec.theta[i + 1] - rec.theta[i - 1];
        const double denom = stream[i].nu *
            std::sqrt(stream[i].kappa * stream[i].kappa + stream[i].tau * stream[i].tau);
        const double ai = (dtheta / dt) / denom;
        rec.a_samples.push_back(ai);
        sum += ai;
    }
    rec.a = sum / static_cast<double>(rec.a_samples.size());
    return rec;
}

BestRational best_rational(double r, long long max_denominator) {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw InvalidParams("best_rational: r must be finite and >= 0");
    if (max_denominator < 1)
        throw InvalidParams("best_rational: max_denominator must be >= 1");

    // Continued-fraction walk keeping the last two convergents; when the next
    // convergent overshoots the denominator bound, the best semiconvergent
    // competes with the last convergent.
    long long p0 = 0, q0 = 1; // h_{-2}/k_{-2}
    long long p1 = 1, q1 = 0; // h_{-1}/k_{-1}
    double y = r;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(y);
        const long long term = static_cast<long long>(fl);
        const long long p2 = term * p1 + p0;
        const long long q2 = term * q1 + q0;
        if (q2 > max_denominator) break;
        p0 = p1; q0 = q1;
        p1 = p2; q1 = q2;
        const double frac = y - fl;
        if (frac < 1e-15) break;
        y = 1.0 / frac;
        if (!std::isfinite(y)) break;
    }
    BestRational best{p1, q1, std::abs(r - static_cast<double>(p1) / static_cast<double>(q1))};
    if (q1 > 0) {
        const long long t = (max_denominator - q0) / q1;
        if (t >= 1) {
            const long long ps = t * p1 + p0;
            const long long qs = t * q1 + q0;
            if (qs >= 1 && qs <= max_denominator) {
                const double err = std::abs(r - static_cast<double>(ps) / static_cast<double>(qs));
                if (err < best.error) best = {ps, qs, err};
            }
        }
    }
    return best;
}

ClosureResult is_closed(const SlantHelixParams& p, int max_denominator, double tol) {
    ClosureResult res;
    res.ratio = std::sqrt(1.0 + p.a * p.a) / std::abs(p.a);
    const BestRational br = best_rational(res.ratio, max_denominator);
    res.p = br.p;
    res.q = br.q;
    res.error = br.error;
    res.rational = br.error < tol;
    res.theta_period = res.rational ? 2.0 * kPi * static_cast<double>(res.q) : 0.0;
    return res;
}

double a_for_ratio(long long p, long long q) {
    if (!(p > q && q >= 1))
        throw InvalidRatio("a_for_ratio: need p > q >= 1 (the ratio is always > 1)");
    const double pd = static_cast<double>(p), qd = static_cast<double>(q);
    return qd / std::sqrt(pd * pd - qd * qd);
}

} // namespace helix
