#pragma once

#include "contactkit/errors.hpp"
#include "contactkit/jet.hpp"

namespace contactkit {

// Odd, non-decreasing C^2 profile: identity on (-a, a), +/-1 beyond +/-2a,
// quintic Hermite blend on [a, 2a] matching value/slope/curvature at both
// joins. Requires a < 1/2 so the plateau is reachable monotonically.
struct CutoffSpec {
    double a = 0.25;

    void validate() const {
        if (a <= 0.0) throw ConfigError("cutoff: transition scale must be positive");
        if (a >= 0.5)
            throw ConfigError("cutoff: a >= 1/2, plateau +/-1 unreachable monotonically");
    }

    template <class T>
    T operator()(const T& u) const {
        double up = primal_value(u);
        if (up <= -2.0 * a) return T(-1.0);
        if (up >= 2.0 * a) return T(1.0);
        if (up > -a && up < a) return u;
        bool neg = up < 0.0;
        T t = neg ? ((T(0.0) - u) - a) / a : (u - a) / a;  // t in [0, 1]
        T t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
        // p(0)=a, p'(0)=a, p''(0)=0 ; p(1)=1, p'(1)=0, p''(1)=0 (d/dt scale).
        T h00 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
        T h10 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
        T h01 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
        T val = a * (h00 + h10) + h01;
        return neg ? T(0.0) - val : val;
    }
};

}  // namespace contactkit
