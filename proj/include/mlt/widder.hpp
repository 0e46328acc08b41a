#ifndef MLT_WIDDER_HPP_
#define MLT_WIDDER_HPP_

#include <string>
#include <vector>

#include "mlt/calculus.hpp"
#include "mlt/function.hpp"
#include "mlt/lcs.hpp"
#include "mlt/oracle.hpp"

namespace mlt {

// Per-coordinate abscissa shifts.
struct GrowthVector {
    std::vector<double> omega;
};

enum class Verdict { certified_at_level, refuted_monotone_growth, inconclusive };

const char* to_string(Verdict v);

struct CertificateRecord {
    std::vector<std::vector<cplx>> axes;  // per-coordinate grid values
    MultiIndex V_max;
    double M_hat = 0.0;
    std::vector<cplx> argmax_lambda;
    MultiIndex argmax_v;
    Verdict verdict = Verdict::inconclusive;
    std::string description;  // encodes grid origin and V_max; grid-level claim
};

struct CertifyOptions {
    DerivMethod method = DerivMethod::closed_form;
    double refute_factor = 1.5;  // heuristic: growth per ray step
    int refute_steps = 3;        // consecutive steps required
};

// p(F^(v)(lambda)) * prod (Re lambda_i - omega_i)^(v_i+1) / prod v_i!,
// combined in log space. On the real axis this is the plain Widder ratio.
double widder_ratio(const TransformOracle& F, const GrowthVector& omega,
                    const std::vector<cplx>& lambda, const MultiIndex& v, const Seminorm& p,
                    const CertifyOptions& opt = {});

// Sweep ratios over grid x orders. M_hat is the sup; monotone ratio growth by
// refute_factor over refute_steps consecutive steps along a coordinate ray
// refutes; otherwise the bound is certified at grid level only.
CertificateRecord certify(const TransformOracle& F, const GrowthVector& omega,
                          const std::vector<std::vector<cplx>>& axes, const MultiIndex& V_max,
                          const Seminorm& p, const CertifyOptions& opt = {});

// Same sweep with Re lambda_i - omega_i in the ratio; the grid may include
// off-axis points.
CertificateRecord halfplane_extension_check(const TransformOracle& F, const GrowthVector& omega,
                                            const std::vector<std::vector<cplx>>& axes,
                                            const MultiIndex& V_max, const Seminorm& p,
                                            const CertifyOptions& opt = {});

// Measured sup of p(f(t)) e^{-omega.t} over the grid; marks the envelope
// verified when it stays within M (1 + 1e-9).
double envelope_check(EnvelopedFunction& f, const GrowthVector& omega, const Seminorm& p,
                      const std::vector<TimePoint>& t_grid);

// Default certification abscissae: omega + {0.25, 0.5, 1, 2, 4, 8, 16}.
std::vector<cplx> default_lambda_axis(double omega_i);

}  // namespace mlt

#endif  // MLT_WIDDER_HPP_
