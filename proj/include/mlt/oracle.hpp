#ifndef MLT_ORACLE_HPP_
#define MLT_ORACLE_HPP_

#include <functional>
#include <vector>

#include "mlt/types.hpp"

namespace mlt {

// A transform F on a product of half-planes, with an optional closed-form
// mixed-derivative callback. Derivatives are exchanged in scaled form because
// high orders carry factorial-sized factors.
struct TransformOracle {
    int n = 1;
    int d = 1;
    std::function<cvec(const std::vector<cplx>&)> eval;
    std::function<ScaledVec(const std::vector<cplx>&, const MultiIndex&)> derivative;
    std::function<double(const std::vector<cplx>&)> singularity_distance;
    std::vector<double> omega;  // declared half-plane abscissae; empty = unknown

    bool has_closed_form() const { return static_cast<bool>(derivative); }
};

// Simple pole term c / (lambda - pole).
struct PoleTerm {
    cplx c;
    cplx pole;
};

// Closed-form derivative of a pole sum, assembled in log space:
// d^v/dl^v c/(l-p) = (-1)^v v! c (l-p)^{-(v+1)}.
ScaledVec pole_sum_derivative(const std::vector<PoleTerm>& terms, cplx lambda, int v);

// 1D oracle for a finite pole sum; omega is the declared abscissa.
TransformOracle pole_sum_oracle(std::vector<PoleTerm> terms, double omega);

// 1D oracle for F(lambda) = lambda^(-a), a > 0 (principal branch).
TransformOracle power_oracle(double a);

// Tensor product of 1D scalar oracles: F(lambda) = prod_i F_i(lambda_i).
TransformOracle tensor_oracle(std::vector<TransformOracle> coords);

// Componentwise stack of scalar oracles sharing dimension n (value in C^d).
TransformOracle stack_oracle(std::vector<TransformOracle> comps);

}  // namespace mlt

#endif  // MLT_ORACLE_HPP_
