#ifndef MLT_INVERSION_HPP_
#define MLT_INVERSION_HPP_

#include <utility>
#include <vector>

#include "mlt/oracle.hpp"
#include "mlt/types.hpp"

namespace mlt {

// k-th Post-Widder approximant f_k(t) = ((-1)^k/k!) (k/t)^{k+1} F^(k)(k/t).
// Factorial and power prefactors are combined in log space.
cvec post_widder_1d(const TransformOracle& F, double t, long k);

// Tensorized form: product of the 1D prefactors against the mixed derivative
// F^(k_1,...,k_n)(k_1/t_1, ..., k_n/t_n). Reduces to the 1D formula at n=1.
cvec post_widder_nd(const TransformOracle& F, const TimePoint& t, const std::vector<long>& k);

// Richardson extrapolation in 1/k for samples on a doubling ladder
// (k, 2k, 4k, ...). Throws "ladder-shape" for anything else.
cvec extrapolate(const std::vector<std::pair<long, cvec>>& samples);

struct InvertNode {
    TimePoint t;
    cvec value;
    double delta = 0.0;  // last-rung extrapolation change, error proxy
    bool converged = false;
    std::vector<long> ladder;
};

struct InvertOptions {
    long k_base = 25;
    long k_max = 400;
    double tol = 1e-6;
};

// Ladder-and-extrapolate driver over a grid of strictly positive nodes.
// Nodes are flagged instead of throwing.
std::vector<InvertNode> invert(const TransformOracle& F, const std::vector<TimePoint>& grid,
                               const InvertOptions& opt = {});

}  // namespace mlt

#endif  // MLT_INVERSION_HPP_
