#include "mlt/calculus.hpp"

#include <cmath>

#include "mlt/transform.hpp"

namespace mlt {

namespace {

std::vector<double> cauchy_radii(const TransformOracle& F, const std::vector<cplx>& lambda,
                                 const MultiIndex& v, const DerivOptions& opt) {
    const int n = F.n;
    std::vector<double> rho(static_cast<size_t>(n), 1.0);
    double sing = std::numeric_limits<double>::infinity();
    if (F.singularity_distance) sing = F.singularity_distance(lambda);
    for (int i = 0; i < n; ++i) {
        double r;
        if (i < static_cast<int>(opt.radius.size()) && opt.radius[static_cast<size_t>(i)] > 0.0) {
            r = opt.radius[static_cast<size_t>(i)];
        } else {
            // Radius as a fraction of the distance to the nearest obstruction.
            // Small circles kill trapezoid aliasing (which decays like
            // (r/dist)^nodes) but amplify rounding by (dist/r)^v, so the
            // fraction grows with the requested order.
            const double frac =
                0.25 + 0.25 * std::min(1.0, v[static_cast<size_t>(i)] / 16.0);
            double room = 4.0;
            if (!F.omega.empty() && std::isfinite(F.omega[static_cast<size_t>(i)]))
                room = std::min(room, lambda[static_cast<size_t>(i)].real() -
                                          F.omega[static_cast<size_t>(i)]);
            if (std::isfinite(sing)) room = std::min(room, sing);
            r = frac * room;
        }
        if (!(r > 0.0)) throw Error("radius-too-large", "no room for a Cauchy circle");
        if (!F.omega.empty() && std::isfinite(F.omega[static_cast<size_t>(i)]) &&
            lambda[static_cast<size_t>(i)].real() - r <= F.omega[static_cast<size_t>(i)])
            throw Error("radius-too-large", "circle crosses the declared half-plane");
        rho[static_cast<size_t>(i)] = r;
    }
    return rho;
}

ScaledVec cauchy_derivative(const TransformOracle& F, const std::vector<cplx>& lambda,
                            const MultiIndex& v, const DerivOptions& opt) {
    const int n = F.n;
    for (int vi : v)
        if (vi > opt.cauchy_max_order)
            throw Error("order-unsupported", "cauchy derivative order exceeds cap");
    const auto rho = cauchy_radii(F, lambda, v, opt);
    std::vector<int> nodes(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) nodes[static_cast<size_t>(i)] = 4 * v[static_cast<size_t>(i)] + 16;

    cvec acc = cvec_zero(F.d);
    std::vector<int> idx(static_cast<size_t>(n), 0);
    std::vector<cplx> z(static_cast<size_t>(n));
    long total = 1;
    for (int i = 0; i < n; ++i) total *= nodes[static_cast<size_t>(i)];
    for (long it = 0; it < total; ++it) {
        cplx phase{1.0, 0.0};
        for (int i = 0; i < n; ++i) {
            const double th = 2.0 * M_PI * idx[static_cast<size_t>(i)] / nodes[static_cast<size_t>(i)];
            z[static_cast<size_t>(i)] =
                lambda[static_cast<size_t>(i)] + rho[static_cast<size_t>(i)] * std::exp(cplx{0.0, th});
            phase *= std::exp(cplx{0.0, -v[static_cast<size_t>(i)] * th});
        }
        cvec_axpy(acc, phase, F.eval(z));
        int i = 0;
        while (i < n && ++idx[static_cast<size_t>(i)] == nodes[static_cast<size_t>(i)]) idx[static_cast<size_t>(i++)] = 0;
    }
    double log_factor = 0.0;
    double inv_nodes = 1.0;
    for (int i = 0; i < n; ++i) {
        log_factor += std::lgamma(v[static_cast<size_t>(i)] + 1.0) -
                      v[static_cast<size_t>(i)] * std::log(rho[static_cast<size_t>(i)]);
        inv_nodes /= nodes[static_cast<size_t>(i)];
    }
    ScaledVec out{cvec_scale(std::move(acc), inv_nodes), log_factor};
    out.normalize();
    return out;
}

struct StencilPoint {
    int offset;
    double coeff;
};

// Fourth-order central stencils.
std::vector<StencilPoint> central_stencil(int order) {
    switch (order) {
        case 0: return {{0, 1.0}};
        case 1:
            return {{-2, 1.0 / 12}, {-1, -8.0 / 12}, {1, 8.0 / 12}, {2, -1.0 / 12}};
        case 2:
            return {{-2, -1.0 / 12}, {-1, 16.0 / 12}, {0, -30.0 / 12}, {1, 16.0 / 12},
                    {2, -1.0 / 12}};
        case 3:
            return {{-3, 1.0 / 8}, {-2, -1.0}, {-1, 13.0 / 8},
                    {1, -13.0 / 8}, {2, 1.0},  {3, -1.0 / 8}};
        default: throw Error("order-unsupported", "finite differences support |v| <= 3");
    }
}

ScaledVec fd_derivative(const TransformOracle& F, const std::vector<cplx>& lambda,
                        const MultiIndex& v, const DerivOptions& opt) {
    if (order_total(v) > opt.fd_max_total_order)
        throw Error("order-unsupported", "finite differences support |v| <= 3");
    const int n = F.n;
    std::vector<std::vector<StencilPoint>> st;
    std::vector<double> h(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        st.push_back(central_stencil(v[static_cast<size_t>(i)]));
        const double eps = std::numeric_limits<double>::epsilon();
        // balance O(h^4) truncation against eps/h^v rounding
        h[static_cast<size_t>(i)] = std::pow(eps, 1.0 / (v[static_cast<size_t>(i)] + 4.0)) *
                                    std::max(1.0, std::abs(lambda[static_cast<size_t>(i)]));
    }
    cvec acc = cvec_zero(F.d);
    std::vector<size_t> idx(static_cast<size_t>(n), 0);
    for (;;) {
        double coeff = 1.0;
        std::vector<cplx> z = lambda;
        for (int i = 0; i < n; ++i) {
            const auto& sp = st[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]];
            coeff *= sp.coeff / std::pow(h[static_cast<size_t>(i)], v[static_cast<size_t>(i)]);
            z[static_cast<size_t>(i)] += sp.offset * h[static_cast<size_t>(i)];
        }
        cvec_axpy(acc, coeff, F.eval(z));
        int i = 0;
        while (i < n && ++idx[static_cast<size_t>(i)] == st[static_cast<size_t>(i)].size()) idx[static_cast<size_t>(i++)] = 0;
        if (i == n) break;
    }
    return ScaledVec::from_value(std::move(acc));
}

}  // namespace

ScaledVec mixed_derivative(const TransformOracle& F, const std::vector<cplx>& lambda,
                           const MultiIndex& v, DerivMethod method, const DerivOptions& opt) {
    if (static_cast<int>(lambda.size()) != F.n || static_cast<int>(v.size()) != F.n)
        throw Error("dim-mismatch", "lambda/order tuple length must match dimension");
    if (order_total(v) == 0 && method != DerivMethod::closed_form)
        return ScaledVec::from_value(F.eval(lambda));
    switch (method) {
        case DerivMethod::closed_form:
            if (!F.has_closed_form())
                throw Error("order-unsupported", "no closed-form derivative registered");
            return F.derivative(lambda, v);
        case DerivMethod::cauchy:
            return cauchy_derivative(F, lambda, v, opt);
        case DerivMethod::finite_difference:
            return fd_derivative(F, lambda, v, opt);
    }
    throw Error("order-unsupported", "unknown method");
}

double derivative_formula_check(const EnvelopedFunction& f, const TransformOracle& F,
                                const std::vector<cplx>& lambda, const MultiIndex& v, double tol) {
    const auto lhs = mixed_derivative(
        F, lambda, v, F.has_closed_form() ? DerivMethod::closed_form : DerivMethod::cauchy);
    const auto rhs = weighted_transform(f, lambda, v, 0.1 * tol);
    const double sign = order_total(v) % 2 == 0 ? 1.0 : -1.0;
    cvec lv = lhs.value();
    double res = 0.0;
    for (size_t j = 0; j < lv.size(); ++j)
        res = std::max(res, std::abs(lv[j] - sign * rhs.value[j]));
    return res;
}

double oracle_smoke_check(const TransformOracle& F, const std::vector<std::vector<cplx>>& points) {
    if (!F.has_closed_form()) throw Error("order-unsupported", "oracle has no closed form");
    double worst = 0.0;
    for (const auto& lambda : points) {
        std::vector<MultiIndex> orders;
        MultiIndex zero(static_cast<size_t>(F.n), 0);
        orders.push_back(zero);
        for (int i = 0; i < F.n; ++i)
            for (int o = 1; o <= 2; ++o) {
                MultiIndex v = zero;
                v[static_cast<size_t>(i)] = o;
                orders.push_back(v);
            }
        if (F.n >= 2) {
            MultiIndex v = zero;
            v[0] = 1;
            v[1] = 1;
            orders.push_back(v);
        }
        for (const auto& v : orders) {
            const cvec a = mixed_derivative(F, lambda, v, DerivMethod::closed_form).value();
            const cvec b = mixed_derivative(F, lambda, v, DerivMethod::finite_difference).value();
            for (size_t j = 0; j < a.size(); ++j) {
                const double scale = std::max({std::abs(a[j]), std::abs(b[j]), 1e-12});
                worst = std::max(worst, std::abs(a[j] - b[j]) / scale);
            }
        }
    }
    return worst;
}

}  // namespace mlt
