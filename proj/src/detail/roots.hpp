#pragma once

#include <algorithm>
#include <cmath>

namespace dhopf::detail {

/// Bisection for a sign change of `f` on [lo, hi]. Stops when the bracket is
/// narrower than rel_tol * max(1, |x|) or after 200 halvings.
template <class F>
double bisect(F&& f, double lo, double hi, double rel_tol) {
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= rel_tol * std::max(1.0, std::abs(mid))) {
            return mid;
        }
        const double fmid = f(mid);
        if (fmid == 0.0) {
            return mid;
        }
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace dhopf::detail
