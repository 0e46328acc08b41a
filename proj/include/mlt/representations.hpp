#ifndef MLT_REPRESENTATIONS_HPP_
#define MLT_REPRESENTATIONS_HPP_

#include <functional>
#include <vector>

#include "mlt/function.hpp"
#include "mlt/lcs.hpp"
#include "mlt/oracle.hpp"

namespace mlt {

// Integrated representation f_r (or h_r, when shift is non-empty) of a
// density: the tensor fractional integral of order r, vanishing at the
// origin by construction.
struct RepresentationBundle {
    enum class Construction { from_density, from_functional_family };

    std::vector<double> r;
    EnvelopedFunction f_r;
    EnvelopedFunction source;
    std::vector<double> shift;  // omega used for the h_r construction; empty for f_r
    Construction construction = Construction::from_density;
};

RepresentationBundle build_f_r(const EnvelopedFunction& f, const std::vector<double>& r,
                               double tol = 1e-10);

// h_r: fractional integral of the damped density e^{-omega.t} f(t).
RepresentationBundle build_h_r(const EnvelopedFunction& f, const std::vector<double>& omega,
                               const std::vector<double>& r, double tol = 1e-10);

// Max residual of F(lambda) - prod lambda_i^{r_i} * L(f_r)(lambda) over the
// lambda grid (sup over components).
double verify_prc1(const RepresentationBundle& b, const TransformOracle& F,
                   const std::vector<std::vector<cplx>>& lambda_points, double tol = 1e-9);

// Max residual of F(lambda) - prod (lambda_i-omega_i)^{r_i} *
// L(h_r)(lambda-omega) for an h_r bundle.
double verify_prc1w(const RepresentationBundle& b, const TransformOracle& F,
                    const std::vector<std::vector<cplx>>& lambda_points, double tol = 1e-9);

// Margins p(f_r(t)) - M_p * (I_r e^{omega.s})(t) per grid node; all should be
// <= quadrature tolerance, with equality for the extremal density.
std::vector<double> verify_prc0(const RepresentationBundle& b, double M_p,
                                const std::vector<double>& omega, const Seminorm& p,
                                const std::vector<TimePoint>& t_grid, double tol = 1e-10);

// Margins p(h_r(t)) - M_p * prod g_{r_i+1}(t_i) for an h_r bundle.
std::vector<double> verify_prc0w(const RepresentationBundle& b, double M_p, const Seminorm& p,
                                 const std::vector<TimePoint>& t_grid);

// 1D primitives H_r = g_{1-r} *0 f_r and G_r = g_{1-r} *0 h_r with an
// increment sweep. r = 1 uses the Dirac convention.
struct GHBundle {
    std::function<cvec(double)> H;
    std::function<cvec(double)> G;
    double g_increment_violation = 0.0;  // max p(G(t+h)-G(t)) - M_p h
    double f_holder_ratio = 0.0;         // sup p(f_r(t+h)-f_r(t)) / (max(e^{w(t+h)},1) h^r)
    double f_holder_bound = 0.0;         // 2 M_p / (r Gamma(r))
};

GHBundle build_G_H(const RepresentationBundle& f_bundle, const RepresentationBundle& h_bundle,
                   double M_p, double omega, const Seminorm& p, const std::vector<double>& t_grid,
                   const std::vector<double>& h_grid, double tol = 1e-10);

// Residual of <x*, F(lambda)> - L(<x*, f>)(lambda) over the polar extreme
// functionals of p and the lambda grid. In this finite-dimensional model the
// functional-indexed densities collapse to the single density f.
double functional_family_check(const EnvelopedFunction& f, const TransformOracle& F,
                               const Seminorm& p, const std::vector<std::vector<cplx>>& lambda_points,
                               double tol = 1e-9);

// Residual of <x*, f_r(t)> - (I_r <x*, f>)(t) over extremes and grid nodes.
// The right side goes through the scalar nested-quadrature route so the two
// sides are computed independently.
double adf_identity_check(const RepresentationBundle& b, const Seminorm& p,
                          const std::vector<TimePoint>& t_grid, double tol = 1e-9);

// w = iterated cumulative integral of f_r; returns the max residual of
// F(lambda) - prod lambda_i^{r_i+1} * L(w)(lambda) and exposes w.
struct WAccumulation {
    EnvelopedFunction w;
    double max_residual = 0.0;
};

WAccumulation w_accumulate(const RepresentationBundle& b, const TransformOracle& F,
                           const std::vector<std::vector<cplx>>& lambda_points, double tol = 1e-9);

// Density recovery from a Lipschitz primitive h1 on [0,T] with h1(0)=0:
// central differences on a uniform grid. Throws "not-lipschitz-at-level"
// when an increment exceeds M_p dt (1 + 1e-6).
struct LipschitzRecovery {
    std::vector<double> t;
    std::vector<cvec> density;
    double sup_p = 0.0;       // measured sup of p(density)
    double lip_margin = 0.0;  // max of p(dh)/dt - M_p (<= 0 when comfortably Lipschitz)
};

LipschitzRecovery density_from_lipschitz(const std::function<cvec(double)>& h1, double T,
                                         double dt, double M_p, const Seminorm& p);

// Residual of F(lambda) - int e^{-(lambda-omega)t} h1'(t) dt with the
// recovered density, trapezoid on the recovery grid.
double retransform_residual(const LipschitzRecovery& rec, const TransformOracle& F, double omega,
                            const std::vector<cplx>& lambda_points_1d);

}  // namespace mlt

#endif  // MLT_REPRESENTATIONS_HPP_
