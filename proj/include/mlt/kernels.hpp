#ifndef MLT_KERNELS_HPP_
#define MLT_KERNELS_HPP_

#include <functional>
#include <vector>

#include "mlt/function.hpp"
#include "mlt/types.hpp"

namespace mlt {

// Fractional kernel order. zeta = 0 designates the Dirac kernel g_0 = delta,
// which is a tagged variant and never evaluated pointwise.
struct Kernel {
    double zeta = 1.0;
    bool dirac() const { return zeta == 0.0; }
};

// g_zeta(t) = t^(zeta-1) / Gamma(zeta), computed through log-Gamma.
// Throws "dirac-not-pointwise" for zeta = 0 and "singular-at-origin" for
// t = 0 with zeta < 1. t = 0 with zeta = 1 gives 1, with zeta > 1 gives 0.
double kernel_eval(double zeta, double t);

// One side of a finite convolution. sing_order declares the algebraic
// behaviour t^(sing_order-1) of f near t=0.
struct ConvOperand {
    std::function<cplx(double)> f;
    double sing_order = 1.0;
    bool dirac = false;
};

ConvOperand kernel_operand(const Kernel& k);
ConvOperand smooth_operand(std::function<cplx(double)> f);

// (a *0 b)(t) = int_0^t a(t-s) b(s) ds with absolute error <= tol.
// Dirac operands short-circuit the integral. Throws "divergent-convolution"
// when both factors are singular and their orders sum to <= 0.
cplx convolve_finite(const ConvOperand& a, const ConvOperand& b, double t, double tol = 1e-10);

// Tensor (iterated) fractional integral of order r per coordinate:
// coordinatewise convolution with g_{r_i}. r_i = 1 is cumulative integration,
// r_i = 0 is the Dirac convention (identity on that coordinate). Other values
// outside (0,1] throw "order-out-of-range". The result vanishes at the origin.
EnvelopedFunction fractional_integrate(const std::vector<double>& r, const EnvelopedFunction& f,
                                       double tol = 1e-10);

}  // namespace mlt

#endif  // MLT_KERNELS_HPP_
