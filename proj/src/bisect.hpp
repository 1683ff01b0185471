#pragma once

#include <cmath>

namespace latspec::detail {

// Bisection on a bracket with f(a) and f(b) of opposite sign. Runs until the
// midpoint is no longer strictly inside the bracket (full double precision)
// or f vanishes exactly, so the result is as tight as floating point allows.
template <class F>
double bisect(F&& f, double a, double b, double fa) {
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (a + b);
        if (!(mid > std::fmin(a, b) && mid < std::fmax(a, b))) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

}  // namespace latspec::detail
