#pragma once

#include "helix/errors.hpp"

namespace helix {

/// Finite-difference configuration. The scheme is fixed 4th-order central.
/// The order-1 step is scaled by max(1, |t|) at the evaluation point; orders
/// 2 and 3 need larger steps (roundoff grows like eps/h^k) that already
/// dominate the representable spacing of any reasonable t, so they are used
/// unscaled. Defaults keep degree-4 polynomials exact to 1e-9 at every order.
struct DiffConfig {
    double step = 1e-4;    // order-1 stencil spacing
    double step2 = 5e-3;   // order-2 stencil spacing
    double step3 = 1.5e-2; // order-3 stencil spacing

    double step_for(int order) const {
        switch (order) {
            case 1: return step;
            case 2: return step2;
            case 3: return step3;
            default: throw InvalidParams("derivative order must be 1, 2 or 3");
        }
    }

    void validate() const {
        if (!(step > 0.0) || !(step2 > 0.0) || !(step3 > 0.0))
            throw InvalidParams("DiffConfig: steps must be > 0");
    }
};

/// Adaptive quadrature configuration.
struct QuadConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw InvalidParams("QuadConfig: tolerances must be > 0");
        if (max_subdivisions < 1)
            throw InvalidParams("QuadConfig: max_subdivisions must be >= 1");
    }
};

} // namespace helix
