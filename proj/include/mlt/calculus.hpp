#ifndef MLT_CALCULUS_HPP_
#define MLT_CALCULUS_HPP_

#include "mlt/function.hpp"
#include "mlt/oracle.hpp"
#include "mlt/types.hpp"

namespace mlt {

enum class DerivMethod { closed_form, cauchy, finite_difference };

struct DerivOptions {
    // Per-coordinate Cauchy radius; <= 0 means the default
    // min(1, (Re lambda_i - omega_i)/2), also capped by half the declared
    // singularity distance.
    std::vector<double> radius;
    int cauchy_max_order = 64;
    int fd_max_total_order = 3;
};

// Mixed partial derivative F^(v) at lambda. Cauchy uses per-coordinate circle
// quadrature with trapezoid nodes (4 v_i + 16 per coordinate), exact for
// analytic integrands up to aliasing.
ScaledVec mixed_derivative(const TransformOracle& F, const std::vector<cplx>& lambda,
                           const MultiIndex& v, DerivMethod method, const DerivOptions& opt = {});

// Residual |F^(v)(lambda) - (-1)^|v| * int e^{-lambda.t} t^v f(t) dt| in the
// sup seminorm, for a matching transform pair.
double derivative_formula_check(const EnvelopedFunction& f, const TransformOracle& F,
                                const std::vector<cplx>& lambda, const MultiIndex& v, double tol);

// Registration smoke check: closed-form derivative against finite differences
// for |v| <= 2 at the given points. Returns the max relative deviation.
double oracle_smoke_check(const TransformOracle& F, const std::vector<std::vector<cplx>>& points);

}  // namespace mlt

#endif  // MLT_CALCULUS_HPP_
