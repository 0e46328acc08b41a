#ifndef MLT_LCS_HPP_
#define MLT_LCS_HPP_

#include <vector>

#include "mlt/types.hpp"

namespace mlt {

// Weighted-sup seminorm p(x) = max_j w_j |x_j| on C^d. Zero weights are
// allowed and make genuine (non-norm) seminorms with degenerate directions.
struct Seminorm {
    std::vector<double> w;
    int dim() const { return static_cast<int>(w.size()); }
};

// Finite-dimensional stand-in for a sequentially complete locally convex
// space: C^d with a finite family of weighted-sup seminorms.
struct SeminormFamily {
    int dim = 1;
    std::vector<Seminorm> seminorms;

    static SeminormFamily sup_norm(int d) {
        return SeminormFamily{d, {Seminorm{std::vector<double>(static_cast<size_t>(d), 1.0)}}};
    }
};

// A continuous linear functional, paired as <a,x> = sum_j a_j x_j.
using Functional = cvec;

double seminorm_eval(const Seminorm& p, const cvec& x);

cplx dual_pairing(const Functional& a, const cvec& x);

// Extreme functionals of the polar U_p of a weighted-sup seminorm: the
// weighted coordinate evaluations w_j e_j with w_j > 0. Phase alignment
// happens at pairing time via the modulus.
std::vector<Functional> polar_extreme(const Seminorm& p);

// Residual |p(x) - sup_{x* extreme} |<x*,x>||; exactly 0 for weighted-sup
// seminorms in exact arithmetic.
double generalized_norm_check(const Seminorm& p, const cvec& x);

}  // namespace mlt

#endif  // MLT_LCS_HPP_
