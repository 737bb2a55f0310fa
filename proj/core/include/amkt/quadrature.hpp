#pragma once

#include <cmath>
#include <utility>

namespace amkt {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    int max_depth = 50;
    // Force this many initial bisection levels before accepting convergence,
    // so a locally flat integrand cannot fake an early exit.
    int min_depth = 5;
};

namespace detail {

template <typename F>
double simpson_step(F& f, double lo, double hi, double flo, double fmid, double fhi, double whole,
                    double tol, int depth, const QuadratureOptions& opt) {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double flmid = f(lmid);
    const double frmid = f(rmid);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flmid + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frmid + fhi);
    const double split = left + right;
    if (depth >= opt.max_depth) {
        return split;
    }
    if (depth >= opt.min_depth && std::fabs(split - whole) <= 15.0 * tol) {
        return split + (split - whole) / 15.0;
    }
    return simpson_step(f, lo, mid, flo, flmid, fmid, left, 0.5 * tol, depth + 1, opt) +
           simpson_step(f, mid, hi, fmid, frmid, fhi, right, 0.5 * tol, depth + 1, opt);
}

} // namespace detail

/// Adaptive Simpson quadrature of f over [lo, hi] to an absolute tolerance.
template <typename F>
double adaptive_simpson(F&& f, double lo, double hi, QuadratureOptions opt = {}) {
    if (lo == hi) {
        return 0.0;
    }
    auto& fn = f;
    const double flo = fn(lo);
    const double fhi = fn(hi);
    const double fmid = fn(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    return detail::simpson_step(fn, lo, hi, flo, fmid, fhi, whole, opt.abs_tol, 0, opt);
}

} // namespace amkt
