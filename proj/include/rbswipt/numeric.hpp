#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "rbswipt/error.hpp"

namespace rbswipt::numeric {

// Bisection for a root of a function that is >= 0 at lo and <= 0 at hi
// (either orientation works as long as the signs differ). Runs until the
// bracket stops shrinking in floating point or max_iter is hit, and returns
// the endpoint with the smaller |fn|.
template <typename Fn>
double bisect(Fn&& fn, double lo, double hi, int max_iter = 400) {
    double f_lo = fn(lo);
    double f_hi = fn(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0))
        throw SolverError("bisection bracket has no sign change", lo);
    for (int i = 0; i < max_iter; ++i) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break;
        const double f_mid = fn(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
}

struct Extremum {
    double x = 0.0;
    double value = 0.0;
};

// Golden-section search for the maximum of a unimodal function on [a, b],
// stopping once the bracket is narrower than tol. Returns the best point
// actually evaluated.
template <typename Fn>
Extremum golden_section_max(Fn&& fn, double a, double b, double tol) {
    constexpr double inv_phi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = fn(c);
    double fd = fn(d);
    Extremum best = fc >= fd ? Extremum{c, fc} : Extremum{d, fd};
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fn(c);
            if (fc > best.value) best = {c, fc};
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fn(d);
            if (fd > best.value) best = {d, fd};
        }
    }
    return best;
}

}  // namespace rbswipt::numeric
