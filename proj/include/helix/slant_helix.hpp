#pragma once

#include <numbers>
#include <span>
#include <vector>

#include "helix/config.hpp"
#include "helix/curve.hpp"
#include "helix/frenet.hpp"
#include "helix/quadrature.hpp"

namespace helix {

inline constexpr double kThetaGuard = 1e-3;   // endpoint guard inside (0, pi)
inline constexpr double kEpsCurv = 1e-9;      // curvature-denominator threshold

/// Parameters of the closed-form spherical slant helix family: geodesic
/// curvature constant a != 0 and sphericity coefficients with A^2 + B^2 = 1.
/// The theta domain bounds the Frenet-touching operations; position and the
/// closed-form frame accept any theta.
struct SlantHelixParams {
    double a = 1.0;
    double A = 1.0;
    double B = 0.0;
    double theta_lo = kThetaGuard;
    double theta_hi = std::numbers::pi - kThetaGuard;

    /// Validates a != 0 and ||(A,B)|| within 1e-9 of 1 (then normalizes
    /// exactly); rejects anything else.
    static SlantHelixParams make(double a, double A, double B);
    static SlantHelixParams make(double a, double A, double B,
                                 double theta_lo, double theta_hi);
};

/// Signed reciprocal of the closed-form curvature,
/// P(theta) = A cos(sin(theta)/a) + B sin(sin(theta)/a).
/// kappa = 1/|P|; the frame of the theta-increasing curve flips where P
/// changes sign.
double curvature_denominator(const SlantHelixParams& p, double theta);

/// d/du of the denominator (u = sin(theta)/a):
/// Q(theta) = B cos(sin(theta)/a) - A sin(sin(theta)/a). P^2 + Q^2 = 1.
double curvature_denominator_slope(const SlantHelixParams& p, double theta);

/// Closed-form point on the unit sphere. ||position|| = 1 for every theta.
Vec3 position(const SlantHelixParams& p, double theta);

/// Analytic d^k(position)/d(theta)^k for k in {1,2,3}.
Vec3 position_derivative(const SlantHelixParams& p, double theta, int order);

struct Frame {
    Vec3 T, N, B;
};

/// Closed-form frame of the family (smooth in theta, orthonormal,
/// right-handed, N.z = a/sqrt(1+a^2) identically).
Frame frame_closed(const SlantHelixParams& p, double theta);

/// kappa = 1 / |A cos(sin(theta)/a) + B sin(sin(theta)/a)| >= 1.
/// Throws CurvatureSingular when the denominator is below eps_curv.
double curvature_closed(const SlantHelixParams& p, double theta);

/// Torsion consistent with the det(alpha',alpha'',alpha''') formula:
/// tau = -cot(theta) / (A cos(sin(theta)/a) + B sin(sin(theta)/a)).
/// Throws ParameterSingular at sin(theta) = 0 and CurvatureSingular as above.
double torsion_closed(const SlantHelixParams& p, double theta);

/// Arc-length element w(theta) = sin(theta) P(theta) / a (signed);
/// |w| = ||d position/d theta||. Vanishes legitimately at sin(theta) = 0.
double speed_weight(const SlantHelixParams& p, double theta);

/// integral of |w| over [theta0, theta1].
double arc_length(const SlantHelixParams& p, double theta0, double theta1,
                  const QuadConfig& cfg = {});

/// Canonical diagnostic evaluator: traverses in the direction of decreasing
/// a*theta (theta-decreasing for a > 0), with analytic derivatives to order
/// 3. Under this orientation the numeric sigma of the family equals -a and
/// the theta-recovery slope equals a, for either sign of a.
CurveEvaluator family_curve(const SlantHelixParams& p, double theta_lo, double theta_hi);
CurveEvaluator family_curve(const SlantHelixParams& p);

/// Evaluator parameter of the canonical curve at a given theta.
double family_parameter(const SlantHelixParams& p, double theta_lo, double theta_hi,
                        double theta);

/// Natural theta-increasing evaluator with analytic derivatives.
CurveEvaluator family_curve_forward(const SlantHelixParams& p, double theta_lo,
                                    double theta_hi);

struct ThetaRecovery {
    std::vector<double> theta;     // unwrapped atan2(kappa, tau) per sample
    std::vector<double> a_samples; // per-sample recovered slope (interior points)
    double a = 0.0;                // mean of a_samples
};

/// Recovers theta and the slant constant a from a Frenet stream per the
/// theta-characterization: tan(theta) = kappa/tau, a = theta'/(nu sqrt(k^2+t^2)).
/// Throws UnwrapFailed on jumps > pi/2 and TorsionCurvatureDegenerate when
/// theta is constant (general-helix stream).
ThetaRecovery theta_characterization(std::span<const FrenetData> stream);

struct ClosureResult {
    double ratio = 0.0;       // sqrt(1+a^2)/|a|
    bool rational = false;
    long long p = 0, q = 0;   // best p/q with q <= max_denominator
    double error = 0.0;       // |ratio - p/q|
    double theta_period = 0.0; // 2 pi q when rational, else 0
};

/// Closure test per the rationality of sqrt(1+a^2)/a, best rational by
/// continued-fraction convergents/semiconvergents.
ClosureResult is_closed(const SlantHelixParams& p, int max_denominator = 64,
                        double tol = 1e-9);

/// Inverts the closure ratio: a with sqrt(1+a^2)/a = p/q, i.e.
/// a = q/sqrt(p^2-q^2). Requires p > q >= 1.
double a_for_ratio(long long p, long long q);

/// Best rational approximation to r with bounded denominator (exposed for the
/// closure report and its tests).
struct BestRational {
    long long p = 0, q = 1;
    double error = 0.0;
};
BestRational best_rational(double r, long long max_denominator);

} // namespace helix
