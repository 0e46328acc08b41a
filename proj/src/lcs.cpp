#include "mlt/lcs.hpp"

#include <cmath>

namespace mlt {

double seminorm_eval(const Seminorm& p, const cvec& x) {
    if (x.size() != p.w.size()) throw Error("dim-mismatch", "seminorm_eval");
    double m = 0.0;
    for (size_t j = 0; j < x.size(); ++j) m = std::max(m, p.w[j] * std::abs(x[j]));
    return m;
}

cplx dual_pairing(const Functional& a, const cvec& x) {
    if (a.size() != x.size()) throw Error("dim-mismatch", "dual_pairing");
    cplx s{0.0, 0.0};
    for (size_t j = 0; j < a.size(); ++j) s += a[j] * x[j];
    return s;
}

std::vector<Functional> polar_extreme(const Seminorm& p) {
    std::vector<Functional> out;
    for (size_t j = 0; j < p.w.size(); ++j) {
        if (p.w[j] <= 0.0) continue;
        Functional e(p.w.size(), cplx{0.0, 0.0});
        e[j] = cplx{p.w[j], 0.0};
        out.push_back(std::move(e));
    }
    return out;
}

double generalized_norm_check(const Seminorm& p, const cvec& x) {
    double sup = 0.0;
    for (const auto& xs : polar_extreme(p)) sup = std::max(sup, std::abs(dual_pairing(xs, x)));
    return std::abs(seminorm_eval(p, x) - sup);
}

}  // namespace mlt
