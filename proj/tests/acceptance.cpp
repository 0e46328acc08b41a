// Acceptance gate: every criterion below prints one PASS/FAIL line with its
// measured figure and runtime; the process exits nonzero if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "mlt/calculus.hpp"
#include "mlt/catalog.hpp"
#include "mlt/inversion.hpp"
#include "mlt/kernels.hpp"
#include "mlt/representations.hpp"
#include "mlt/transform.hpp"
#include "mlt/widder.hpp"

using namespace mlt;
using clk = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::vector<std::string> eligible_n2() {
    std::vector<std::string> out;
    for (const auto& name : catalog_list()) {
        const auto& e = catalog_get(name);
        if (e.has_oracle && !e.singular_density && !e.oscillatory && e.n <= 2)
            out.push_back(name);
    }
    return out;
}

char buf[256];

Outcome criterion1() {
    // kernel semigroup g_a *0 g_b = g_{a+b} on t in [0.1,3]
    double worst = 0.0;
    for (double a : {0.25, 0.5, 0.75, 1.0})
        for (double b : {0.25, 0.5, 0.75, 1.0})
            for (double t = 0.1; t <= 3.0 + 1e-12; t += 0.1) {
                const cplx conv = convolve_finite(kernel_operand(Kernel{a}),
                                                  kernel_operand(Kernel{b}), t, 1e-10);
                worst = std::max(worst, std::abs(conv - kernel_eval(a + b, t)));
            }
    std::snprintf(buf, sizeof buf, "sup semigroup defect %.2e (tol 1e-8)", worst);
    return {worst <= 1e-8, buf};
}

Outcome criterion2() {
    // derivative formula against the weighted transform, |v| <= 4, n <= 2
    double worst = 0.0;
    for (const auto& name : catalog_list()) {
        const auto& e = catalog_get(name);
        if (!e.has_oracle || e.n > 2) continue;
        std::vector<MultiIndex> orders;
        if (e.n == 1) {
            for (int k = 0; k <= 4; ++k) orders.push_back({k});
        } else {
            for (int i = 0; i <= 4; ++i)
                for (int j = 0; i + j <= 4; ++j) orders.push_back({i, j});
        }
        for (double s : {0.7, 1.3, 2.1}) {
            std::vector<cplx> lambda;
            for (double w : e.density.omega)
                lambda.emplace_back(std::max(w, 0.0) + s + 0.3, 0.0);
            for (const auto& v : orders) {
                const double res = derivative_formula_check(e.density, e.oracle, lambda, v, 1e-7);
                const cvec ref = mixed_derivative(e.oracle, lambda, v,
                                                  DerivMethod::closed_form)
                                     .value();
                double scale = 1e-12;
                for (const auto& c : ref) scale = std::max(scale, std::abs(c));
                worst = std::max(worst, res / scale);
            }
        }
    }
    std::snprintf(buf, sizeof buf, "max relative residual %.2e (tol 1e-8)", worst);
    return {worst <= 1e-8, buf};
}

Outcome criterion3() {
    // unit constants for the exponential family; refutation of sqrt growth
    double lo = 1.0, hi = 1.0;
    bool verdicts_ok = true;
    for (const char* name : {"exp-1d", "exp-decay-1d", "one-1d", "exp-2d", "one-2d",
                             "exp-decay-2d", "exp-decay-3d", "vec-exp-1d"}) {
        const auto& e = catalog_get(name);
        std::vector<std::vector<cplx>> axes;
        for (double w : e.density.omega) axes.push_back(default_lambda_axis(w));
        const Seminorm p{std::vector<double>(static_cast<size_t>(e.d), 1.0)};
        const auto rec = certify(e.oracle, GrowthVector{e.density.omega}, axes,
                                 MultiIndex(static_cast<size_t>(e.n), 10), p);
        lo = std::min(lo, rec.M_hat);
        hi = std::max(hi, rec.M_hat);
        verdicts_ok = verdicts_ok && rec.verdict == Verdict::certified_at_level;
    }
    const auto refut = certify(power_oracle(0.5), GrowthVector{{0.0}},
                               {{{1.0, 0.0}, {4.0, 0.0}, {16.0, 0.0}, {64.0, 0.0}}}, {4},
                               Seminorm{{1.0}});
    const bool refuted = refut.verdict == Verdict::refuted_monotone_growth;
    std::snprintf(buf, sizeof buf, "M_hat in [%.12f, %.12f], sqrt fixture %s", lo, hi,
                  refuted ? "refuted" : "NOT refuted");
    return {lo >= 1.0 - 1e-9 && hi <= 1.0 + 1e-6 && verdicts_ok && refuted, buf};
}

Outcome criterion4() {
    const auto& one = catalog_get("one-1d");
    const auto& poly = catalog_get("poly-t-1d");
    double w1 = 0.0, w2 = 0.0;
    for (long k : {25L, 50L, 100L, 200L, 400L})
        for (double t : {0.5, 1.0, 2.5}) {
            w1 = std::max(w1, std::abs(post_widder_1d(one.oracle, t, k)[0] - 1.0));
            w2 = std::max(w2, std::abs(post_widder_1d(poly.oracle, t, k)[0] -
                                       t * (k + 1.0) / k));
        }
    std::snprintf(buf, sizeof buf, "1/lambda defect %.2e (1e-13); 1/lambda^2 defect %.2e (1e-12)",
                  w1, w2);
    return {w1 <= 1e-13 && w2 <= 1e-12, buf};
}

Outcome criterion5() {
    const auto& ed = catalog_get("exp-decay-1d");
    const cvec acc = extrapolate({{100, post_widder_1d(ed.oracle, 1.0, 100)},
                                  {200, post_widder_1d(ed.oracle, 1.0, 200)}});
    const double err1 = std::abs(acc[0].real() - std::exp(-1.0));

    const auto& ed2 = catalog_get("exp-decay-2d");
    const cvec acc2 = extrapolate({{100, post_widder_nd(ed2.oracle, {1.0, 1.0}, {100, 100})},
                                   {200, post_widder_nd(ed2.oracle, {1.0, 1.0}, {200, 200})}});
    const double err2 = std::abs(acc2[0].real() - std::exp(-2.0));
    std::snprintf(buf, sizeof buf, "1D error %.2e (1e-5); 2D error %.2e (3e-5)", err1, err2);
    return {err1 <= 1e-5 && err2 <= 3e-5, buf};
}

Outcome criterion6() {
    double worst = 0.0;
    for (const auto& name : eligible_n2()) {
        const auto& e = catalog_get(name);
        const Seminorm p{std::vector<double>(static_cast<size_t>(e.d), 1.0)};
        std::vector<std::vector<double>> r_tuples;
        for (double r1 : {0.25, 0.5, 0.75, 1.0}) {
            if (e.n == 1) {
                r_tuples.push_back({r1});
            } else {
                for (double r2 : {0.25, 0.5, 0.75, 1.0}) r_tuples.push_back({r1, r2});
            }
        }
        std::vector<cplx> lambda;
        for (double w : e.density.omega) lambda.emplace_back(std::max(w, 0.0) + 1.0, 0.0);
        std::vector<TimePoint> t_pts{TimePoint(static_cast<size_t>(e.n), 0.8)};
        for (const auto& r : r_tuples) {
            const auto b = build_f_r(e.density, r, 1e-8);
            worst = std::max(worst, verify_prc1(b, e.oracle, {lambda}, 3e-8));
            worst = std::max(worst, adf_identity_check(b, p, t_pts, 3e-8));
        }
    }

    // equality-case margins for f = e^{omega t}
    double margin = 0.0;
    const auto f = exponential_function({0.3});
    const std::vector<TimePoint> grid{{0.5}, {1.0}, {2.0}};
    for (double r : {0.5, 1.0}) {
        const auto bf = build_f_r(f, {r});
        for (double m : verify_prc0(bf, 1.0, {0.3}, Seminorm{{1.0}}, grid))
            margin = std::max(margin, std::abs(m));
        const auto bh = build_h_r(f, {0.3}, {r});
        for (double m : verify_prc0w(bh, 1.0, Seminorm{{1.0}}, grid))
            margin = std::max(margin, std::abs(m));
    }
    std::snprintf(buf, sizeof buf,
                  "max identity residual %.2e (1e-7); equality margin %.2e (1e-9)", worst,
                  margin);
    return {worst <= 1e-7 && margin <= 1e-9, buf};
}

Outcome criterion7() {
    const auto one = constant_function(1, cplx{1.0, 0.0});
    const std::vector<double> t_grid{0.0, 0.1, 0.5, 1.0, 2.0, 3.0};
    const std::vector<double> h_grid{1e-3, 1e-2, 0.1, 0.5, 1.0};
    double violation = -1.0, holder_gap = 1.0;
    for (double r : {0.25, 0.5, 0.75, 1.0}) {
        const auto fb = build_f_r(one, {r}, 1e-10);
        const auto hb = build_h_r(one, {0.0}, {r}, 1e-10);
        const auto gh = build_G_H(fb, hb, 1.0, 0.0, Seminorm{{1.0}}, t_grid, h_grid, 1e-9);
        violation = std::max(violation, gh.g_increment_violation);
        holder_gap = std::min(holder_gap, gh.f_holder_bound - gh.f_holder_ratio);
    }
    std::snprintf(buf, sizeof buf, "max increment violation %.2e (1e-9); Holder gap %.2e",
                  violation, holder_gap);
    return {violation <= 1e-9 && holder_gap >= 0.0, buf};
}

Outcome criterion8() {
    const auto h1 = [](double t) { return cvec{cplx{1.0 - std::exp(-t), 0.0}}; };
    const auto rec = density_from_lipschitz(h1, 16.0, 1e-3, 1.0, Seminorm{{1.0}});
    double sup_err = 0.0;
    for (size_t i = 0; i < rec.t.size(); ++i)
        sup_err = std::max(sup_err, std::abs(rec.density[i][0] - std::exp(-rec.t[i])));
    const auto& F = catalog_get("exp-decay-1d").oracle;
    const double res = retransform_residual(rec, F, 0.0, {cplx{1.0, 0.0}, cplx{2.5, 0.0}});
    bool rejected = false;
    try {
        density_from_lipschitz([](double t) { return cvec{cplx{std::sqrt(t), 0.0}}; }, 1.0,
                               1e-3, 1.0, Seminorm{{1.0}});
    } catch (const Error& e) {
        rejected = std::string(e.code()) == "not-lipschitz-at-level";
    }
    std::snprintf(buf, sizeof buf,
                  "sup error %.2e (1e-4); retransform %.2e (1e-6); sqrt %s", sup_err, res,
                  rejected ? "rejected" : "NOT rejected");
    return {sup_err <= 1e-4 && res <= 1e-6 && rejected, buf};
}

Outcome criterion9() {
    const auto& osc = catalog_get("dirichlet-osc").density;
    const auto conv = region_probe(osc, {cplx{0.5, 0.0}}, {4.0, 6.0, 8.0, 10.0});
    const auto grow = exponential_function({1.0, 1.0});
    const auto abs2 = region_probe(grow, {cplx{2.0, 0.0}, cplx{2.0, 0.0}},
                                   {6.0, 10.0, 14.0, 18.0});
    const auto div2 = region_probe(grow, {cplx{0.5, 0.0}, cplx{0.5, 0.0}},
                                   {2.0, 6.0, 10.0, 16.0});
    const bool ok = conv.cls == RegionClass::convergent &&
                    abs2.cls == RegionClass::absolute &&
                    div2.cls == RegionClass::divergence_evidence;
    std::snprintf(buf, sizeof buf, "classes: %s / %s / %s", to_string(conv.cls),
                  to_string(abs2.cls), to_string(div2.cls));
    return {ok, buf};
}

}  // namespace

int main() {
    catalog_register_builtin();
    const struct {
        const char* name;
        std::function<Outcome()> fn;
        double budget_s;
    } criteria[] = {
        {"kernel semigroup", criterion1, 10.0},
        {"derivative formula", criterion2, 60.0},
        {"growth-bound certification", criterion3, 30.0},
        {"Post-Widder exactness", criterion4, 60.0},
        {"round-trip extrapolation", criterion5, 60.0},
        {"representation identities", criterion6, 300.0},
        {"increment bounds", criterion7, 300.0},
        {"Lipschitz recovery", criterion8, 60.0},
        {"region probes", criterion9, 60.0},
    };
    int failures = 0;
    const auto t_all = clk::now();
    int idx = 1;
    for (const auto& c : criteria) {
        const auto t0 = clk::now();
        Outcome out;
        try {
            out = c.fn();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(clk::now() - t0).count();
        const bool in_budget = secs < c.budget_s;
        if (!out.pass || !in_budget) ++failures;
        std::printf("criterion %d (%s): %s — %s [%.1fs%s]\n", idx++, c.name,
                    out.pass && in_budget ? "PASS" : "FAIL", out.detail.c_str(), secs,
                    in_budget ? "" : ", over budget");
    }
    const double total = std::chrono::duration<double>(clk::now() - t_all).count();
    const bool total_ok = total < 600.0;
    if (!total_ok) ++failures;
    std::printf("criterion 10 (wall clock): %s — %.1fs of 600s budget\n",
                total_ok ? "PASS" : "FAIL", total);
    return failures == 0 ? 0 : 1;
}
