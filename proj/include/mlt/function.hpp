#ifndef MLT_FUNCTION_HPP_
#define MLT_FUNCTION_HPP_

#include <functional>
#include <utility>
#include <vector>

#include "mlt/types.hpp"

namespace mlt {

// One coordinate factor of a separable density. sing_order declares the
// algebraic behaviour t^(sing_order-1) near t=0 (1 = bounded), env_M and
// env_omega an exponential majorant |f(t)| <= env_M * exp(env_omega * t).
struct Func1D {
    std::function<cplx(double)> eval;
    double sing_order = 1.0;
    double env_M = 1.0;
    double env_omega = 0.0;
};

// A function f : [0,inf)^n -> C^d with a declared exponential envelope
// p(f(t)) <= M * exp(omega . t) for the sup seminorm. When the density is a
// tensor product, `factors` carries the per-component per-coordinate factors
// and every transform-side computation uses the separable fast path.
struct EnvelopedFunction {
    int n = 1;
    int d = 1;
    std::function<cvec(const TimePoint&)> eval;
    std::vector<std::vector<Func1D>> factors;  // [component][coordinate]
    std::vector<double> omega;                 // size n
    double M = 1.0;
    bool envelope_verified = false;

    // Oscillation structure for the region probe (1D specimens only):
    // returns `count` consecutive phase zeros of the integrand, the last one
    // at or below T.
    std::function<std::vector<double>(double T, int count)> osc_zeros;

    bool separable() const { return !factors.empty(); }

    cvec operator()(const TimePoint& t) const { return eval(t); }

    static EnvelopedFunction from_factors(std::vector<std::vector<Func1D>> fac,
                                          std::vector<double> growth, double level) {
        EnvelopedFunction f;
        f.d = static_cast<int>(fac.size());
        f.n = static_cast<int>(fac.front().size());
        f.factors = std::move(fac);
        f.omega = std::move(growth);
        f.M = level;
        f.eval = [fref = f.factors, d = f.d, n = f.n](const TimePoint& t) {
            cvec out(static_cast<size_t>(d));
            for (int j = 0; j < d; ++j) {
                cplx v{1.0, 0.0};
                for (int i = 0; i < n; ++i) v *= fref[static_cast<size_t>(j)][static_cast<size_t>(i)].eval(t[static_cast<size_t>(i)]);
                out[static_cast<size_t>(j)] = v;
            }
            return out;
        };
        return f;
    }
};

// Scalar constant density on [0,inf)^n.
EnvelopedFunction constant_function(int n, cplx value, double level = 1.0);

// Scalar separable exponential exp(omega . t).
EnvelopedFunction exponential_function(const std::vector<double>& omega);

}  // namespace mlt

#endif  // MLT_FUNCTION_HPP_
