#ifndef MLT_QUADRATURE_HPP_
#define MLT_QUADRATURE_HPP_

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <functional>

#include "mlt/types.hpp"

namespace mlt {

// Shared evaluation counter so callers can report panel/evaluation budgets.
struct QuadStats {
    long evaluations = 0;
};

// Adaptive Gauss-Kronrod on [a,b] for a smooth integrand.
template <class F>
auto integrate_smooth(F&& f, double a, double b, double tol, QuadStats* stats = nullptr) {
    using boost::math::quadrature::gauss_kronrod;
    auto g = [&](double t) {
        if (stats) ++stats->evaluations;
        return f(t);
    };
    double err = 0.0;
    // depth 15 caps the blow-up when tol sits below the attainable relative
    // accuracy (roundoff-limited integrands otherwise recurse to the bottom)
    return gauss_kronrod<double, 15>::integrate(g, a, b, 15, tol, &err);
}

// Fixed-order Gauss on a single panel. Used where the panel is already known
// to be smooth and short (e.g. probe segments between phase zeros); the
// adaptive estimator turns noise-limited below ~1e-8 relative there.
template <class F>
auto integrate_fixed(F&& f, double a, double b, QuadStats* stats = nullptr) {
    using boost::math::quadrature::gauss;
    if (stats) stats->evaluations += 31;
    return gauss<double, 31>::integrate(f, a, b);
}

// Integral over [0,b] of an integrand behaving like t^(zeta-1) near 0,
// zeta in (0,1). Substituting t = b*u^(1/zeta) removes the singularity:
// the transformed integrand is bounded at u=0.
template <class F>
auto integrate_singular_origin(F&& f, double b, double zeta, double tol,
                               QuadStats* stats = nullptr) {
    const double inv = 1.0 / zeta;
    auto g = [&, b, inv](double u) {
        const double t = b * std::pow(u, inv);
        return f(t) * (b * inv * std::pow(u, inv - 1.0));
    };
    return integrate_smooth(g, 0.0, 1.0, tol, stats);
}

// Integral over [a,b] of an integrand behaving like (b-t)^(zeta-1) near b.
template <class F>
auto integrate_singular_upper(F&& f, double a, double b, double zeta, double tol,
                              QuadStats* stats = nullptr) {
    const double len = b - a;
    const double inv = 1.0 / zeta;
    auto g = [&, b, len, inv](double u) {
        const double t = b - len * std::pow(u, inv);
        return f(t) * (len * inv * std::pow(u, inv - 1.0));
    };
    return integrate_smooth(g, 0.0, 1.0, tol, stats);
}

// Integrand with algebraic endpoint behaviour t^(sing_order-1) near t=0.
// Any non-integer order gets the power substitution: t^0.25 is as hostile
// to dyadic refinement as t^-0.75, just less visibly so.
template <class F>
auto integrate_with_origin_order(F&& f, double a, double b, double sing_order, double tol,
                                 QuadStats* stats = nullptr) {
    using R = decltype(f(1.0));
    const bool polynomial_like =
        std::abs(sing_order - std::round(sing_order)) < 1e-12 && sing_order >= 1.0;
    if (polynomial_like || a > 0.0) return integrate_smooth(f, a, b, tol, stats);
    const double split = std::min(1.0, b);
    R head = integrate_singular_origin(f, split, sing_order, tol, stats);
    if (split < b) head += integrate_smooth(f, split, b, tol, stats);
    return head;
}

}  // namespace mlt

#endif  // MLT_QUADRATURE_HPP_
