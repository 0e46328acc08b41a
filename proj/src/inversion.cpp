#include "mlt/inversion.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

#include "mlt/calculus.hpp"

namespace mlt {

cvec post_widder_nd(const TransformOracle& F, const TimePoint& t, const std::vector<long>& k) {
    const int n = F.n;
    if (static_cast<int>(t.size()) != n || static_cast<int>(k.size()) != n)
        throw Error("dim-mismatch", "t/k tuple length must match dimension");
    std::vector<cplx> lambda(static_cast<size_t>(n));
    double log_coef = 0.0;
    double sign = 1.0;
    MultiIndex v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const long ki = k[static_cast<size_t>(i)];
        const double ti = t[static_cast<size_t>(i)];
        if (ki < 1) throw Error("order-out-of-range", "Post-Widder order must be >= 1");
        if (!(ti > 0.0)) throw Error("order-out-of-range", "Post-Widder time must be > 0");
        const double abscissa = static_cast<double>(ki) / ti;
        if (!F.omega.empty() && std::isfinite(F.omega[static_cast<size_t>(i)]) &&
            abscissa <= F.omega[static_cast<size_t>(i)])
            throw Error("abscissa-outside-halfplane", "k/t must exceed the growth rate");
        lambda[static_cast<size_t>(i)] = cplx{abscissa, 0.0};
        // log(k/t) must match the oracle's own log(|lambda|) so the factorial
        // and power factors cancel exactly for the collapsing fixtures.
        log_coef += -std::lgamma(static_cast<double>(ki) + 1.0) + (ki + 1) * std::log(abscissa);
        if (ki % 2 != 0) sign = -sign;
        v[static_cast<size_t>(i)] = static_cast<int>(ki);
    }
    ScaledVec deriv;
    if (F.has_closed_form()) {
        deriv = F.derivative(lambda, v);
    } else {
        deriv = mixed_derivative(F, lambda, v, DerivMethod::cauchy);
    }
    const double scale = sign * std::exp(log_coef + deriv.log_scale);
    cvec out = deriv.m;
    for (auto& c : out) c *= scale;
    return out;
}

cvec post_widder_1d(const TransformOracle& F, double t, long k) {
    return post_widder_nd(F, {t}, {k});
}

cvec extrapolate(const std::vector<std::pair<long, cvec>>& samples) {
    if (samples.size() < 2) throw Error("ladder-shape", "need at least two samples");
    for (size_t i = 1; i < samples.size(); ++i)
        if (samples[i].first != 2 * samples[i - 1].first)
            throw Error("ladder-shape", "orders must double along the ladder");
    std::vector<cvec> R;
    for (const auto& s : samples) R.push_back(s.second);
    // Neville in h = 1/k with node ratio 2.
    for (size_t m = 1; m < R.size(); ++m) {
        const double pw = std::pow(2.0, static_cast<double>(m));
        for (size_t j = R.size() - 1; j >= m; --j) {
            for (size_t c = 0; c < R[j].size(); ++c)
                R[j][c] = (pw * R[j][c] - R[j - 1][c]) / (pw - 1.0);
            if (j == m) break;
        }
    }
    return R.back();
}

std::vector<InvertNode> invert(const TransformOracle& F, const std::vector<TimePoint>& grid,
                               const InvertOptions& opt) {
    std::vector<InvertNode> out(grid.size());
    auto run_node = [&](size_t g) {
        InvertNode& node = out[g];
        node.t = grid[g];
        std::vector<std::pair<long, cvec>> samples;
        for (long k = opt.k_base; k <= opt.k_max; k *= 2) {
            node.ladder.push_back(k);
            std::vector<long> kt(grid[g].size(), k);
            samples.emplace_back(k, post_widder_nd(F, grid[g], kt));
        }
        if (samples.size() < 2) {
            node.value = samples.front().second;
            node.delta = std::numeric_limits<double>::infinity();
            node.converged = false;
            return;
        }
        node.value = extrapolate(samples);
        std::vector<std::pair<long, cvec>> head(samples.begin(), samples.end() - 1);
        node.delta = cvec_dist_sup(node.value, extrapolate(head));
        node.converged = node.delta <= opt.tol;
    };

    unsigned threads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("MLT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) threads = static_cast<unsigned>(v);
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(grid.size()));
    if (threads <= 1) {
        for (size_t g = 0; g < grid.size(); ++g) run_node(g);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&, w]() {
                for (size_t g = w; g < grid.size(); g += threads) run_node(g);
            });
        for (auto& th : pool) th.join();
    }
    return out;
}

}  // namespace mlt
