#pragma once

#include <array>
#include <functional>
#include <utility>

#include "helix/errors.hpp"
#include "helix/vec3.hpp"

namespace helix {

/// Evaluable mapping from a scalar parameter to a point in R^3 over a closed
/// interval, optionally carrying analytic derivative maps up to order 3.
/// When an analytic derivative is present, derive() returns it directly and
/// no finite-difference stencil is formed.
class CurveEvaluator {
public:
    using PointFn = std::function<Vec3(double)>;

    CurveEvaluator(PointFn point, double t_lo, double t_hi)
        : point_(std::move(point)), t_lo_(t_lo), t_hi_(t_hi) {
        if (!(t_lo_ <= t_hi_))
            throw InvalidParams("CurveEvaluator: t_lo must be <= t_hi");
    }

    CurveEvaluator& with_derivative(int order, PointFn d) {
        check_order(order);
        derivs_[static_cast<std::size_t>(order - 1)] = std::move(d);
        return *this;
    }

    Vec3 operator()(double t) const { return point_(t); }
    Vec3 point(double t) const { return point_(t); }

    bool has_analytic(int order) const {
        check_order(order);
        return static_cast<bool>(derivs_[static_cast<std::size_t>(order - 1)]);
    }

    Vec3 analytic_derivative(int order, double t) const {
        check_order(order);
        return derivs_[static_cast<std::size_t>(order - 1)](t);
    }

    double t_lo() const { return t_lo_; }
    double t_hi() const { return t_hi_; }

    bool contains(double t) const { return t >= t_lo_ && t <= t_hi_; }

private:
    static void check_order(int order) {
        if (order < 1 || order > 3)
            throw InvalidParams("derivative order must be 1, 2 or 3");
    }

    PointFn point_;
    std::array<PointFn, 3> derivs_{};
    double t_lo_;
    double t_hi_;
};

} // namespace helix
