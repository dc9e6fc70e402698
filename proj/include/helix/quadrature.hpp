#pragma once

#include <functional>
#include <span>
#include <vector>

#include "helix/config.hpp"

namespace helix {

using ScalarFn = std::function<double(double)>;

/// Adaptive Simpson quadrature of g over [lo, hi]. Deterministic for a fixed
/// config. Throws ToleranceNotMet when the subdivision budget is exhausted.
double integrate(const ScalarFn& g, double lo, double hi, const QuadConfig& cfg = {});

/// Cumulative integral of sampled values y_i = g(x_i) at every grid point,
/// by piecewise-parabolic (composite Simpson) increments. result[0] = 0.
/// Grid may be non-uniform; needs at least 2 points (3 for parabolic order).
std::vector<double> cumulative_simpson(std::span<const double> x,
                                       std::span<const double> y);

/// Same, but refines sub-intervals adaptively with extra evaluator calls when
/// the local Simpson error estimate exceeds the configured tolerance.
std::vector<double> cumulative_simpson(std::span<const double> x, const ScalarFn& g,
                                       const QuadConfig& cfg);

} // namespace helix
