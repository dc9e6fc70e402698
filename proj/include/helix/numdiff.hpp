#pragma once

#include <functional>

#include "helix/config.hpp"
#include "helix/curve.hpp"

namespace helix {

/// k-th derivative of the curve at t. Returns the analytic derivative when
/// the evaluator supplies one; otherwise a 4th-order central difference.
/// Throws DomainExceeded when the stencil would leave the domain.
Vec3 derive(const CurveEvaluator& f, double t, int order, const DiffConfig& cfg = {});

/// 4th-order central first derivative of a scalar function,
/// (g(t-2h) - 8 g(t-h) + 8 g(t+h) - g(t+2h)) / (12 h).
double central_derivative(const std::function<double(double)>& g, double t, double h);

} // namespace helix
