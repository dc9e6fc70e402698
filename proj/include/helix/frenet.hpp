#pragma once

#include <span>
#include <string>
#include <vector>

#include "helix/config.hpp"
#include "helix/curve.hpp"
#include "helix/numdiff.hpp"

namespace helix {

/// Per-parameter Serret-Frenet bundle for a general (non arc-length) parameter.
struct FrenetData {
    double t = 0.0;
    double nu = 0.0;    // speed ||alpha'||
    Vec3 T, N, B;       // orthonormal right-handed frame, N = B x T
    double kappa = 0.0; // ||alpha' x alpha''|| / nu^3 >= 0
    double tau = 0.0;   // det(alpha', alpha'', alpha''') / ||alpha' x alpha''||^2
};

/// Rank/speed thresholds. eps_rank is relative to nu^3 so non-unit-speed
/// parametrizations are treated uniformly.
inline constexpr double kEpsSpeed = 1e-12;
inline constexpr double kEpsRankRel = 1e-10;

FrenetData frenet_apparatus(const CurveEvaluator& curve, double t,
                            const DiffConfig& cfg = {});

/// Geodesic curvature of the principal-normal indicatrix,
/// sigma = kappa^2 / (nu (kappa^2 + tau^2)^(3/2)) * d(tau/kappa)/dt,
/// with tau/kappa differentiated as one composite scalar in the curve's own
/// parameter. Constant exactly for slant helices.
double sigma(const CurveEvaluator& curve, double t, const DiffConfig& cfg = {});

struct SlantAxis {
    Vec3 u;    // tau/(a s) T + N + kappa/(a s) B with s = sqrt(kappa^2+tau^2)
    Vec3 unit; // normalized copy
};

/// Slant-helix axis at t for slant constant a (the curve's sigma value under
/// its own orientation). ||u||^2 = 1 + 1/a^2 identically.
SlantAxis slant_axis(const CurveEvaluator& curve, double t, double a,
                     const DiffConfig& cfg = {});

struct SlantSample {
    double t = 0.0;
    bool ok = false;
    std::string status; // error name when !ok
    double sigma = 0.0;
    Vec3 normal;
    double axis_cos = 0.0; // <N, unit axis>
};

struct SlantReport {
    std::vector<SlantSample> samples;
    std::size_t valid_count = 0;
    double sigma_mean = 0.0;
    double sigma_max_dev = 0.0;
    Vec3 axis;              // normalized slant axis at the median valid sample
    bool is_slant_helix = false;
};

/// Samples sigma over the grid; per-point failures are recorded with a status
/// tag and excluded from the aggregates. Throws when fewer than half of the
/// grid points are valid. Classification: slant helix iff max |sigma - mean|
/// over valid samples < tol.
SlantReport slant_report(const CurveEvaluator& curve, std::span<const double> grid,
                         const DiffConfig& cfg = {}, double tol = 1e-5);

} // namespace helix
