#pragma once

#include "csf/errors.hpp"

#include <cmath>
#include <functional>

namespace csf {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_depth = 48;
};

namespace detail {

template <class F>
double adaptive_simpson_rec(F& f, double a, double b, double fa, double fm,
                            double fb, double whole, double abs_tol,
                            double rel_tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    const double tol = std::max(abs_tol, rel_tol * std::abs(left + right));
    if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
    if (depth <= 0)
        throw QuadratureFailure("adaptive Simpson: depth limit reached");
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * abs_tol,
                                rel_tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * abs_tol,
                                rel_tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson quadrature of f over [a, b].
template <class F>
double integrate(F&& f, double a, double b, QuadratureOptions opt = {}) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fm = f(0.5 * (a + b));
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, opt.abs_tol,
                                        opt.rel_tol, opt.max_depth);
}

} // namespace csf
