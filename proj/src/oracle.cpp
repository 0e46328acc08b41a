#include "mlt/oracle.hpp"

#include <cmath>
#include <limits>
#include <memory>

namespace mlt {

ScaledVec pole_sum_derivative(const std::vector<PoleTerm>& terms, cplx lambda, int v) {
    std::vector<ScaledVec> parts;
    const double sign = (v % 2 == 0) ? 1.0 : -1.0;
    for (const auto& t : terms) {
        const cplx z = lambda - t.pole;
        const double mag = std::abs(z);
        if (mag == 0.0) throw Error("radius-too-large", "evaluation at a pole");
        const double phase = std::arg(z);
        ScaledVec term;
        term.m = {sign * t.c * std::exp(cplx{0.0, -(v + 1) * phase})};
        term.log_scale = std::lgamma(v + 1.0) - (v + 1) * std::log(mag);
        parts.push_back(std::move(term));
    }
    return scaled_sum(parts);
}

TransformOracle pole_sum_oracle(std::vector<PoleTerm> terms, double omega) {
    TransformOracle F;
    F.n = 1;
    F.d = 1;
    F.omega = {omega};
    F.eval = [terms](const std::vector<cplx>& l) {
        cplx s{0.0, 0.0};
        for (const auto& t : terms) s += t.c / (l[0] - t.pole);
        return cvec{s};
    };
    F.derivative = [terms](const std::vector<cplx>& l, const MultiIndex& v) {
        return pole_sum_derivative(terms, l[0], v[0]);
    };
    F.singularity_distance = [terms](const std::vector<cplx>& l) {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& t : terms) d = std::min(d, std::abs(l[0] - t.pole));
        return d;
    };
    return F;
}

TransformOracle power_oracle(double a) {
    TransformOracle F;
    F.n = 1;
    F.d = 1;
    F.omega = {0.0};
    F.eval = [a](const std::vector<cplx>& l) { return cvec{std::pow(l[0], -a)}; };
    // F^(v) = (-1)^v Gamma(a+v)/Gamma(a) lambda^(-a-v)
    F.derivative = [a](const std::vector<cplx>& l, const MultiIndex& v) {
        const int k = v[0];
        const cplx z = l[0];
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        ScaledVec out;
        const cplx logz = std::log(z);
        out.m = {sign * std::exp(cplx{0.0, -(a + k) * logz.imag()})};
        out.log_scale = std::lgamma(a + k) - std::lgamma(a) - (a + k) * logz.real();
        return out;
    };
    F.singularity_distance = [](const std::vector<cplx>& l) { return std::abs(l[0]); };
    return F;
}

TransformOracle tensor_oracle(std::vector<TransformOracle> coords) {
    TransformOracle F;
    F.n = static_cast<int>(coords.size());
    F.d = 1;
    bool closed = true;
    for (const auto& c : coords) {
        F.omega.push_back(c.omega.empty() ? -std::numeric_limits<double>::infinity() : c.omega[0]);
        closed = closed && c.has_closed_form();
    }
    auto shared = std::make_shared<std::vector<TransformOracle>>(std::move(coords));
    F.eval = [shared](const std::vector<cplx>& l) {
        cplx p{1.0, 0.0};
        for (size_t i = 0; i < shared->size(); ++i) p *= (*shared)[i].eval({l[i]})[0];
        return cvec{p};
    };
    if (closed) {
        F.derivative = [shared](const std::vector<cplx>& l, const MultiIndex& v) {
            ScaledVec out{cvec{cplx{1.0, 0.0}}, 0.0};
            for (size_t i = 0; i < shared->size(); ++i) {
                ScaledVec di = (*shared)[i].derivative({l[i]}, {v[i]});
                out.m[0] *= di.m[0];
                out.log_scale += di.log_scale;
            }
            return out;
        };
    }
    F.singularity_distance = [shared](const std::vector<cplx>& l) {
        double d = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < shared->size(); ++i)
            if ((*shared)[i].singularity_distance)
                d = std::min(d, (*shared)[i].singularity_distance({l[i]}));
        return d;
    };
    return F;
}

TransformOracle stack_oracle(std::vector<TransformOracle> comps) {
    TransformOracle F;
    F.n = comps.front().n;
    F.d = static_cast<int>(comps.size());
    F.omega.assign(static_cast<size_t>(F.n), -std::numeric_limits<double>::infinity());
    bool closed = true;
    for (const auto& c : comps) {
        for (int i = 0; i < F.n; ++i)
            if (!c.omega.empty())
                F.omega[static_cast<size_t>(i)] =
                    std::max(F.omega[static_cast<size_t>(i)], c.omega[static_cast<size_t>(i)]);
        closed = closed && c.has_closed_form();
    }
    auto shared = std::make_shared<std::vector<TransformOracle>>(std::move(comps));
    F.eval = [shared](const std::vector<cplx>& l) {
        cvec out;
        for (const auto& c : *shared) out.push_back(c.eval(l)[0]);
        return out;
    };
    if (closed) {
        F.derivative = [shared](const std::vector<cplx>& l, const MultiIndex& v) {
            std::vector<ScaledVec> parts;
            for (const auto& c : *shared) parts.push_back(c.derivative(l, v));
            double top = parts[0].log_scale;
            for (const auto& p : parts) top = std::max(top, p.log_scale);
            ScaledVec out{cvec_zero(static_cast<int>(parts.size())), top};
            for (size_t j = 0; j < parts.size(); ++j)
                out.m[j] = parts[j].m[0] * std::exp(parts[j].log_scale - top);
            return out;
        };
    }
    F.singularity_distance = [shared](const std::vector<cplx>& l) {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& c : *shared)
            if (c.singularity_distance) d = std::min(d, c.singularity_distance(l));
        return d;
    };
    return F;
}

}  // namespace mlt
