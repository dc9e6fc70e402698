#pragma once

#include <span>
#include <string>
#include <vector>

#include "helix/curve.hpp"
#include "helix/frenet.hpp"
#include "helix/slant_helix.hpp"

namespace helix {

inline constexpr double kEpsTorsion = 1e-8; // below this, criterion (2) is inapplicable

/// Orthonormal frame {alpha, T, Y = alpha x T} along a unit-sphere curve.
struct SabbanFrame {
    Vec3 alpha, T, Y;
};

SabbanFrame sabban_frame(const CurveEvaluator& curve, double t, const DiffConfig& cfg = {});

/// Wong criterion (2): r^2 = (1/kappa)^2 + ((1/(nu tau)) (1/kappa)')^2.
/// Throws TorsionDegenerate when |tau| <= eps_torsion (use the ODE criterion).
double wong_radius(const CurveEvaluator& curve, double t, const DiffConfig& cfg = {});

/// Wong criterion (3) left-hand side:
/// (1/nu) ((1/(nu tau)) (1/kappa)')' + tau/kappa. Zero iff spherical.
double wong_ode_residual(const CurveEvaluator& curve, double t, const DiffConfig& cfg = {});

/// Criterion (3) on a sampled Frenet stream by finite differences on the grid.
/// Entries that lack enough neighbors (two at each end) are NaN.
std::vector<double> wong_ode_residual_stream(std::span<const FrenetData> stream);

struct WongConfig {
    double r2_tol = 1e-6;   // constancy tolerance for the criterion-(2) samples
    double ode_tol = 1e-4;  // max |residual| for criterion (3)
    double fit_tol = 1e-6;  // RMS residual for criterion (4)
    std::size_t min_fit_samples = 8;
};

struct WongReport {
    // criterion (2)
    std::vector<double> r2_samples; // NaN where inapplicable or degenerate
    bool r2_applicable = false;
    double r2_mean = 0.0;
    double r2_max_dev = 0.0;
    bool radius_constant = false;
    // criterion (3)
    std::vector<double> ode_residuals; // NaN where degenerate
    double ode_max_abs = 0.0;
    bool ode_pass = false;
    // criterion (4): 1/kappa = A cos(Phi) + B sin(Phi), Phi = integral of nu tau
    double fitted_A = 0.0, fitted_B = 0.0;
    double fitted_r = 0.0;     // sqrt(A^2 + B^2)
    double fit_residual = 0.0; // RMS misfit of 1/kappa
    bool fit_pass = false;
    // aggregate
    std::size_t valid_samples = 0;
    std::vector<std::string> skipped; // "t=...: reason" for per-point degeneracies
    bool spherical = false;
};

/// Aggregated Wong diagnostics over a parameter grid: cumulative Phi by
/// composite Simpson on the longest contiguous run of valid samples, linear
/// least squares of 1/kappa against (cos Phi, sin Phi), plus criteria (2) and
/// (3) samples and verdicts. The (A, B) pair is reported up to the phase
/// freedom of the integration origin; compare A^2 + B^2 and the residual.
WongReport wong_fit(const CurveEvaluator& curve, std::span<const double> grid,
                    const QuadConfig& qcfg = {}, const DiffConfig& dcfg = {},
                    const WongConfig& wcfg = {});

/// Y-indicatrix of the family member: position x T_closed. Unit for all theta.
Vec3 y_indicatrix(const SlantHelixParams& p, double theta);

/// Analytic d^k Y / d theta^k, k in {1,2,3}.
Vec3 y_indicatrix_derivative(const SlantHelixParams& p, double theta, int order);

/// The Y curve as an evaluator, traversed with a*theta increasing (the
/// natural orientation for a > 0); under it the numeric sigma of Y equals +a
/// for either sign of a.
CurveEvaluator y_curve(const SlantHelixParams& p, double theta_lo, double theta_hi);

/// Evaluator parameter of the Y curve at a given theta.
double y_parameter(const SlantHelixParams& p, double theta_lo, double theta_hi,
                   double theta);

struct IndicatrixCurvatures {
    double kappa = 0.0; // kappa / sqrt(kappa^2 - 1)
    double tau = 0.0;   // tau / sqrt(kappa^2 - 1)
    double sigma = 0.0; // the source curve's slant constant
};

/// Closed-form curvature/torsion of the Y-indicatrix from the source curve's
/// kappa, tau. Requires kappa > 1 + eps (kappa = 1 is the great-circle
/// contact case).
IndicatrixCurvatures y_curvatures(double kappa, double tau, double a);

} // namespace helix
