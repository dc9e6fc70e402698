#pragma once

#include <stdexcept>
#include <string>

namespace helix {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Finite-difference stencil would leave the evaluator's domain.
struct DomainExceeded : Error { using Error::Error; };
/// Adaptive quadrature exhausted its subdivision budget.
struct ToleranceNotMet : Error { using Error::Error; };
/// Regular-curve precondition violated: ||alpha'|| below threshold.
struct SpeedZero : Error { using Error::Error; };
/// ||alpha' x alpha''|| below threshold: N, B, tau undefined (kappa ~ 0).
struct NormalUndefined : Error { using Error::Error; };
/// kappa^2 + tau^2 below threshold.
struct TorsionCurvatureDegenerate : Error { using Error::Error; };
/// Family parameter degeneracy (sin(theta) = 0: speed vanishes, cot blows up).
struct ParameterSingular : Error { using Error::Error; };
/// Closed-form curvature denominator below threshold.
struct CurvatureSingular : Error { using Error::Error; };
/// a_for_ratio requires p > q >= 1.
struct InvalidRatio : Error { using Error::Error; };
/// |tau| too small for Wong's criterion (2); use the ODE criterion instead.
struct TorsionDegenerate : Error { using Error::Error; };
/// Sabban frame requires a unit-sphere point.
struct NotOnSphere : Error { using Error::Error; };
/// y_curvatures requires kappa > 1.
struct CurvatureDegenerate : Error { using Error::Error; };
/// Consecutive theta samples jump by more than pi/2: grid too coarse.
struct UnwrapFailed : Error { using Error::Error; };
/// lift_to_sphere post-fit residual exceeded tolerance.
struct SphereFitFailed : Error {
    SphereFitFailed(const std::string& msg, double resid)
        : Error(msg), residual(resid) {}
    double residual;
};
/// Invalid construction parameters (violated type invariant).
struct InvalidParams : Error { using Error::Error; };

} // namespace helix
