#include "mlt/widder.hpp"

#include <cmath>
#include <sstream>

namespace mlt {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::certified_at_level: return "certified-at-level";
        case Verdict::refuted_monotone_growth: return "refuted-monotone-growth";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

double widder_ratio(const TransformOracle& F, const GrowthVector& omega,
                    const std::vector<cplx>& lambda, const MultiIndex& v, const Seminorm& p,
                    const CertifyOptions& opt) {
    const int n = F.n;
    if (static_cast<int>(lambda.size()) != n || static_cast<int>(v.size()) != n ||
        static_cast<int>(omega.omega.size()) != n)
        throw Error("dim-mismatch", "widder_ratio");
    double log_weight = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = lambda[static_cast<size_t>(i)].real() - omega.omega[static_cast<size_t>(i)];
        if (!(a > 0.0)) throw Error("abscissa-outside-halfplane", "lambda must exceed omega");
        log_weight += (v[static_cast<size_t>(i)] + 1) * std::log(a) -
                      std::lgamma(v[static_cast<size_t>(i)] + 1.0);
    }
    const ScaledVec deriv = mixed_derivative(F, lambda, v, opt.method);
    const double pm = seminorm_eval(p, deriv.m);
    if (pm == 0.0) return 0.0;
    return pm * std::exp(deriv.log_scale + log_weight);
}

namespace {

CertificateRecord sweep(const TransformOracle& F, const GrowthVector& omega,
                        const std::vector<std::vector<cplx>>& axes, const MultiIndex& V_max,
                        const Seminorm& p, const CertifyOptions& opt) {
    const int n = F.n;
    CertificateRecord rec;
    rec.axes = axes;
    rec.V_max = V_max;

    // Flattened grid and order enumerations, both lexicographic.
    std::vector<std::vector<cplx>> grid;
    {
        std::vector<size_t> idx(static_cast<size_t>(n), 0);
        for (;;) {
            std::vector<cplx> pt(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) pt[static_cast<size_t>(i)] = axes[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]];
            grid.push_back(std::move(pt));
            int i = n - 1;
            while (i >= 0 && ++idx[static_cast<size_t>(i)] == axes[static_cast<size_t>(i)].size()) idx[static_cast<size_t>(i--)] = 0;
            if (i < 0) break;
        }
    }
    std::vector<MultiIndex> orders;
    {
        MultiIndex v(static_cast<size_t>(n), 0);
        for (;;) {
            orders.push_back(v);
            int i = n - 1;
            while (i >= 0 && ++v[static_cast<size_t>(i)] > V_max[static_cast<size_t>(i)]) v[static_cast<size_t>(i--)] = 0;
            if (i < 0) break;
        }
    }

    std::vector<std::vector<double>> ratios(grid.size(), std::vector<double>(orders.size(), 0.0));
    bool all_finite = true;
    for (size_t g = 0; g < grid.size(); ++g)
        for (size_t o = 0; o < orders.size(); ++o) {
            const double r = widder_ratio(F, omega, grid[g], orders[o], p, opt);
            ratios[g][o] = r;
            all_finite = all_finite && std::isfinite(r);
            if (r > rec.M_hat) {
                rec.M_hat = r;
                rec.argmax_lambda = grid[g];
                rec.argmax_v = orders[o];
            }
        }
    if (rec.argmax_lambda.empty() && !grid.empty()) {
        rec.argmax_lambda = grid.front();
        rec.argmax_v = orders.front();
    }

    // Refutation scan: rays of increasing Re lambda along each coordinate.
    bool refuted = false;
    auto grid_index = [&](const std::vector<size_t>& idx) {
        size_t flat = 0;
        for (int i = 0; i < n; ++i) flat = flat * axes[static_cast<size_t>(i)].size() + idx[static_cast<size_t>(i)];
        return flat;
    };
    for (int c = 0; c < n && !refuted; ++c) {
        std::vector<size_t> idx(static_cast<size_t>(n), 0);
        for (;;) {
            if (idx[static_cast<size_t>(c)] == 0) {
                for (size_t o = 0; o < orders.size() && !refuted; ++o) {
                    // only a growth run that persists to the far end of the
                    // ray counts: a ratio can legitimately climb near the
                    // abscissa before flattening below its sup
                    int run = 0;
                    for (size_t s = 1; s < axes[static_cast<size_t>(c)].size(); ++s) {
                        auto prev_idx = idx, cur_idx = idx;
                        prev_idx[static_cast<size_t>(c)] = s - 1;
                        cur_idx[static_cast<size_t>(c)] = s;
                        const double prev = ratios[grid_index(prev_idx)][o];
                        const double cur = ratios[grid_index(cur_idx)][o];
                        run = (prev > 0.0 && cur >= opt.refute_factor * prev) ? run + 1 : 0;
                    }
                    if (run >= opt.refute_steps) refuted = true;
                }
            }
            int i = n - 1;
            while (i >= 0 && ++idx[static_cast<size_t>(i)] == axes[static_cast<size_t>(i)].size()) idx[static_cast<size_t>(i--)] = 0;
            if (i < 0) break;
        }
    }

    rec.verdict = refuted ? Verdict::refuted_monotone_growth
                : all_finite ? Verdict::certified_at_level
                             : Verdict::inconclusive;

    std::ostringstream desc;
    desc << to_string(rec.verdict) << " on grid";
    for (int i = 0; i < n; ++i) {
        desc << (i == 0 ? " [" : " x [");
        for (size_t s = 0; s < axes[static_cast<size_t>(i)].size(); ++s) {
            if (s) desc << ",";
            desc << axes[static_cast<size_t>(i)][s].real();
            if (axes[static_cast<size_t>(i)][s].imag() != 0.0)
                desc << (axes[static_cast<size_t>(i)][s].imag() >= 0 ? "+" : "")
                     << axes[static_cast<size_t>(i)][s].imag() << "i";
        }
        desc << "]";
    }
    desc << ", V_max=(";
    for (int i = 0; i < n; ++i) desc << (i ? "," : "") << V_max[static_cast<size_t>(i)];
    desc << "); grid-level statement, not a proof";
    rec.description = desc.str();
    return rec;
}

}  // namespace

CertificateRecord certify(const TransformOracle& F, const GrowthVector& omega,
                          const std::vector<std::vector<cplx>>& axes, const MultiIndex& V_max,
                          const Seminorm& p, const CertifyOptions& opt) {
    return sweep(F, omega, axes, V_max, p, opt);
}

CertificateRecord halfplane_extension_check(const TransformOracle& F, const GrowthVector& omega,
                                            const std::vector<std::vector<cplx>>& axes,
                                            const MultiIndex& V_max, const Seminorm& p,
                                            const CertifyOptions& opt) {
    return sweep(F, omega, axes, V_max, p, opt);
}

double envelope_check(EnvelopedFunction& f, const GrowthVector& omega, const Seminorm& p,
                      const std::vector<TimePoint>& t_grid) {
    double sup = 0.0;
    for (const auto& t : t_grid) {
        double damp = 0.0;
        for (size_t i = 0; i < t.size(); ++i) damp += omega.omega[i] * t[i];
        sup = std::max(sup, seminorm_eval(p, f.eval(t)) * std::exp(-damp));
    }
    if (sup <= f.M * (1.0 + 1e-9)) f.envelope_verified = true;
    return sup;
}

std::vector<cplx> default_lambda_axis(double omega_i) {
    std::vector<cplx> axis;
    for (double s : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) axis.emplace_back(omega_i + s, 0.0);
    return axis;
}

}  // namespace mlt
