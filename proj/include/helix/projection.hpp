#pragma once

#include <array>
#include <span>
#include <vector>

#include "helix/curve.hpp"
#include "helix/quadrature.hpp"
#include "helix/slant_helix.hpp"

namespace helix {

/// Orthogonal projection of a point onto the plane through the origin
/// orthogonal to the (unit) axis.
Vec3 project_point(const Vec3& pt, const Vec3& axis);

/// alpha_pi(t) = alpha(t) - <alpha(t), axis> axis. Requires ||axis|| = 1
/// within 1e-10.
Vec3 project(const CurveEvaluator& curve, const Vec3& axis, double t);

/// The projected curve as an evaluator; analytic derivatives forward through
/// the (linear) projector.
CurveEvaluator projected_curve(const CurveEvaluator& curve, const Vec3& axis);

/// Cosines of the angles between the slant axis and T, N, B, plus
/// sin(theta1) = sqrt(a^2 + sin^2 theta)/sqrt(1+a^2).
struct AxisAngles {
    double cos1 = 0.0, cos2 = 0.0, cos3 = 0.0;
    double sin1 = 0.0;
};

AxisAngles axis_angles(const SlantHelixParams& p, double theta);

/// Planar curvature of the axis projection,
/// kappa_pi = (1+a^2) sin(theta) / (a^2 + sin^2 theta)^(3/2) * kappa.
double projection_curvature(const SlantHelixParams& p, double theta, double kappa);

/// Same quantity through the frame-angle route, (cos3 / sin1^3) * kappa.
double projection_curvature_via_angles(const AxisAngles& ang, double kappa);

/// Unwrapped tangent angle of the projected curve,
/// phi_pi = m*theta - psi(theta) with m = sqrt(1+a^2)/a and psi the continuous
/// branch of arctan(m tan theta). Continuous for all theta.
double tangent_angle(const SlantHelixParams& p, double theta);

struct PlanarSample {
    double s = 0.0;     // planar arc length
    double x = 0.0, y = 0.0;
    double phi = 0.0;   // unwrapped tangent angle
    double kappa = 0.0; // planar curvature at s
};

/// Rebuilds the plane curve from its intrinsic equation kappa(s):
/// phi = integral of kappa, x = integral of cos phi, y = integral of sin phi,
/// starting at (0,0) with angle 0, by cumulative Simpson over the grid with
/// local adaptive refinement.
std::vector<PlanarSample> reconstruct_plane(const ScalarFn& kappa_of_s,
                                            std::span<const double> s_grid,
                                            const QuadConfig& cfg = {});

struct SphereFit {
    Vec3 center;
    double radius = 0.0;
    double max_residual = 0.0; // max | ||p - center|| - radius |
};

/// Algebraic least-squares sphere fit (linear in center and radius^2).
SphereFit fit_sphere(std::span<const Vec3> pts);

/// Full 3D reconstruction of the family member by quadrature in theta:
/// x, y from the intrinsic planar pipeline, z from z' = -cos(theta) w /
/// sqrt(1+a^2); integration constants resolved by fitting the cloud to the
/// unit sphere and shifting to the origin. Throws SphereFitFailed when the
/// post-fit residual is >= 1e-6.
std::vector<Vec3> lift_to_sphere(const SlantHelixParams& p,
                                 std::span<const double> theta_grid,
                                 const QuadConfig& cfg = {});

/// Rigid 2D registration (rotation + translation, reflection permitted) of
/// `from` onto `to` by least squares over matched sample pairs.
struct Rigid2D {
    double r00 = 1.0, r01 = 0.0, r10 = 0.0, r11 = 1.0;
    double tx = 0.0, ty = 0.0;
    bool reflected = false;
    std::array<double, 2> apply(const std::array<double, 2>& pt) const {
        return {r00 * pt[0] + r01 * pt[1] + tx, r10 * pt[0] + r11 * pt[1] + ty};
    }
};

Rigid2D register_planar(std::span<const std::array<double, 2>> from,
                        std::span<const std::array<double, 2>> to);

} // namespace helix
