// search.hpp - golden-section search on a bracketing interval
#pragma once

#include <cmath>
#include <utility>

namespace dqd {

/// Minimizer of a unimodal f on [lo, hi], to within `tol` in x.
template <class F>
std::pair<double, double> golden_section_minimize(F&& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (std::abs(b - a) > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

template <class F>
std::pair<double, double> golden_section_maximize(F&& f, double lo, double hi, double tol) {
    auto [x, fx] = golden_section_minimize([&f](double v) { return -f(v); }, lo, hi, tol);
    return {x, -fx};
}

}  // namespace dqd
