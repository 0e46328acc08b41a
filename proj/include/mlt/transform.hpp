#ifndef MLT_TRANSFORM_HPP_
#define MLT_TRANSFORM_HPP_

#include <string>
#include <vector>

#include "mlt/function.hpp"
#include "mlt/types.hpp"

namespace mlt {

struct TransformResult {
    enum class Status { converged, truncated, failed };
    cvec value;
    double tail_bound = 0.0;
    long panels = 0;  // integrand evaluations
    Status status = Status::converged;
};

const char* to_string(TransformResult::Status s);

// Iterated improper integral of e^{-lambda.t} f(t) over [0,inf)^n.
// Truncation T per coordinate comes from the declared envelope so the tail
// is certifiable; quadrature error and tail each get half of tol. Throws
// "outside-declared-halfplane" when the envelope is verified and some
// Re lambda_i <= omega_i; without a verified envelope the computation is
// best-effort and the status reports what happened.
TransformResult laplace_forward(const EnvelopedFunction& f, const std::vector<cplx>& lambda,
                                double tol = 1e-10);

// Same integral with weight t_1^{v_1} ... t_n^{v_n}; the weight is absorbed
// into the truncation selection.
TransformResult weighted_transform(const EnvelopedFunction& f, const std::vector<cplx>& lambda,
                                   const MultiIndex& v, double tol = 1e-10);

enum class RegionClass {
    absolute,
    convergent_bounded,
    convergent,
    inconclusive,
    divergence_evidence,
};

const char* to_string(RegionClass c);

struct ProbeOptions {
    double cauchy_rel = 1e-5;
    double cauchy_abs = 1e-7;
    double divergence_factor = 1e6;
    double quad_tol = 1e-9;
    int window = 8;  // phase zeros averaged per schedule point
};

struct ProbeReport {
    RegionClass cls = RegionClass::inconclusive;
    std::vector<double> absolute_partials;
    std::vector<cvec> raw_partials;
    std::vector<cvec> accelerated_partials;  // empty without oscillation data
    double corner_max = 0.0;
};

// Convergence-region probe along an increasing truncation schedule
// (>= 4 entries). Classification only; never throws on divergence.
ProbeReport region_probe(const EnvelopedFunction& f, const std::vector<cplx>& lambda,
                         const std::vector<double>& schedule, const ProbeOptions& opt = {});

}  // namespace mlt

#endif  // MLT_TRANSFORM_HPP_
