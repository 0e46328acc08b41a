#include "mlt/kernels.hpp"

#include <cmath>

#include "mlt/quadrature.hpp"

namespace mlt {

double kernel_eval(double zeta, double t) {
    if (zeta == 0.0) throw Error("dirac-not-pointwise", "g_0 is the Dirac distribution");
    if (zeta < 0.0) throw Error("order-out-of-range", "kernel order must be >= 0");
    if (t < 0.0) throw Error("order-out-of-range", "kernel argument must be >= 0");
    if (t == 0.0) {
        if (zeta < 1.0) throw Error("singular-at-origin", "g_zeta blows up at t=0 for zeta<1");
        return zeta == 1.0 ? 1.0 : 0.0;
    }
    return std::exp((zeta - 1.0) * std::log(t) - std::lgamma(zeta));
}

ConvOperand kernel_operand(const Kernel& k) {
    if (k.dirac()) return ConvOperand{nullptr, 1.0, true};
    const double z = k.zeta;
    return ConvOperand{[z](double t) { return cplx{kernel_eval(z, t), 0.0}; }, z, false};
}

ConvOperand smooth_operand(std::function<cplx(double)> f) {
    return ConvOperand{std::move(f), 1.0, false};
}

cplx convolve_finite(const ConvOperand& a, const ConvOperand& b, double t, double tol) {
    if (a.dirac && b.dirac) throw Error("dirac-not-pointwise", "delta *0 delta is not a function");
    if (a.dirac) return b.f(t);
    if (b.dirac) return a.f(t);
    if (a.sing_order + b.sing_order <= 0.0)
        throw Error("divergent-convolution", "endpoint orders sum to <= 0");
    if (t == 0.0) return cplx{0.0, 0.0};

    const double half = 0.5 * t;
    // Lower panel [0,t/2]: possible singularity of b at s=0.
    auto lo = [&](double s) { return a.f(t - s) * b.f(s); };
    cplx result = integrate_with_origin_order(lo, 0.0, half, b.sing_order, 0.5 * tol);
    // Upper panel [t/2,t], substituted u = t-s: possible singularity of a.
    auto hi = [&](double u) { return a.f(u) * b.f(t - u); };
    result += integrate_with_origin_order(hi, 0.0, half, a.sing_order, 0.5 * tol);
    return result;
}

namespace {

void check_orders(const std::vector<double>& r) {
    for (double ri : r) {
        if (ri == 0.0) continue;  // Dirac convention: identity coordinate
        if (!(ri > 0.0 && ri <= 1.0))
            throw Error("order-out-of-range", "fractional order must lie in (0,1]");
    }
}

// Nested integral for the non-separable path, one component at a time.
cplx frac_int_component(const EnvelopedFunction& f, int comp, const std::vector<double>& r,
                        const TimePoint& t, double tol) {
    const int n = f.n;
    TimePoint s(static_cast<size_t>(n), 0.0);
    std::function<cplx(int)> rec = [&](int i) -> cplx {
        if (i == n) return f.eval(s)[static_cast<size_t>(comp)];
        const double ri = r[static_cast<size_t>(i)];
        const double ti = t[static_cast<size_t>(i)];
        if (ri == 0.0) {
            s[static_cast<size_t>(i)] = ti;
            return rec(i + 1);
        }
        if (ti == 0.0) return cplx{0.0, 0.0};
        // integrate in the distance tau = ti - si so the kernel argument is
        // computed directly; forming ti - si near si = ti cancels to zero
        auto integrand = [&](double tau) {
            s[static_cast<size_t>(i)] = ti - tau;
            return cplx{kernel_eval(ri, tau), 0.0} * rec(i + 1);
        };
        const double inner_tol = tol * 0.2;
        if (ri < 1.0) return integrate_singular_origin(integrand, ti, ri, inner_tol);
        return integrate_smooth(integrand, 0.0, ti, inner_tol);
    };
    return rec(0);
}

}  // namespace

EnvelopedFunction fractional_integrate(const std::vector<double>& r, const EnvelopedFunction& f,
                                       double tol) {
    if (static_cast<int>(r.size()) != f.n)
        throw Error("dim-mismatch", "order tuple length must match dimension");
    check_orders(r);

    EnvelopedFunction out;
    out.n = f.n;
    out.d = f.d;

    if (f.separable()) {
        std::vector<std::vector<Func1D>> fac(f.factors.size());
        for (size_t j = 0; j < f.factors.size(); ++j) {
            for (size_t i = 0; i < f.factors[j].size(); ++i) {
                const Func1D& g = f.factors[j][i];
                const double ri = r[i];
                if (ri == 0.0) {
                    fac[j].push_back(g);
                    continue;
                }
                ConvOperand op{g.eval, g.sing_order, false};
                ConvOperand ker = kernel_operand(Kernel{ri});
                Func1D h;
                h.eval = [op, ker, tol](double t) {
                    if (t == 0.0) return cplx{0.0, 0.0};
                    return convolve_finite(ker, op, t, tol);
                };
                h.sing_order = ri + g.sing_order;
                // (g_r * e^{w s})(t) <= e^{max(w,0) t} g_{r+1}(t); absorb the
                // power growth into an extra 0.25 on the rate.
                h.env_omega = std::max(g.env_omega, 0.0) + 0.25;
                h.env_M = g.env_M * std::pow(4.0 * ri, ri) * std::exp(-ri) /
                          std::tgamma(ri + 1.0);
                fac[j].push_back(h);
            }
        }
        std::vector<double> w(static_cast<size_t>(f.n));
        for (size_t i = 0; i < w.size(); ++i)
            w[i] = r[i] == 0.0 ? f.omega[i] : std::max(f.omega[i], 0.0) + 0.25;
        out = EnvelopedFunction::from_factors(std::move(fac), std::move(w), f.M);
        return out;
    }

    out.omega.resize(static_cast<size_t>(f.n));
    for (size_t i = 0; i < out.omega.size(); ++i)
        out.omega[i] = r[i] == 0.0 ? f.omega[i] : std::max(f.omega[i], 0.0) + 0.25;
    out.M = f.M;
    EnvelopedFunction base = f;
    std::vector<double> rc = r;
    out.eval = [base, rc, tol](const TimePoint& t) {
        cvec v(static_cast<size_t>(base.d));
        for (int j = 0; j < base.d; ++j)
            v[static_cast<size_t>(j)] = frac_int_component(base, j, rc, t, tol);
        return v;
    };
    return out;
}

}  // namespace mlt
