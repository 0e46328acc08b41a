#ifndef MLT_TYPES_HPP_
#define MLT_TYPES_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlt {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// Mixed differentiation / kernel-exponent order tuple, one entry per coordinate.
using MultiIndex = std::vector<int>;

// Point in [0,inf)^n.
using TimePoint = std::vector<double>;

// Error with a stable machine-readable code plus a human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

inline int order_total(const MultiIndex& v) {
    int s = 0;
    for (int vi : v) s += vi;
    return s;
}

inline cvec cvec_zero(int d) { return cvec(static_cast<size_t>(d), cplx{0.0, 0.0}); }

inline cvec& cvec_axpy(cvec& y, cplx a, const cvec& x) {
    for (size_t j = 0; j < y.size(); ++j) y[j] += a * x[j];
    return y;
}

inline cvec cvec_scale(cvec x, cplx a) {
    for (auto& c : x) c *= a;
    return x;
}

inline double cvec_sup(const cvec& x) {
    double m = 0.0;
    for (const auto& c : x) m = std::max(m, std::abs(c));
    return m;
}

inline double cvec_dist_sup(const cvec& a, const cvec& b) {
    double m = 0.0;
    for (size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

// Value represented as mantissa * exp(log_scale), componentwise shared scale.
// High-order derivatives carry factorial-sized factors that overflow a plain
// double; every derivative path hands these around instead of raw values.
struct ScaledVec {
    cvec m;
    double log_scale = 0.0;

    static ScaledVec from_value(cvec v) { return ScaledVec{std::move(v), 0.0}; }

    cvec value() const {
        cvec out = m;
        const double s = std::exp(log_scale);
        for (auto& c : out) c *= s;
        return out;
    }

    // Rescale so the largest mantissa component has modulus 1.
    void normalize() {
        double mx = cvec_sup(m);
        if (mx <= 0.0 || !std::isfinite(mx)) return;
        for (auto& c : m) c /= mx;
        log_scale += std::log(mx);
    }

    // Sup-magnitude in log space: log of max_j |value_j|.
    double log_sup() const {
        double mx = cvec_sup(m);
        if (mx <= 0.0) return -std::numeric_limits<double>::infinity();
        return std::log(mx) + log_scale;
    }
};

// Sum of scaled terms with shared-exponent alignment.
inline ScaledVec scaled_sum(const std::vector<ScaledVec>& terms) {
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms)
        if (cvec_sup(t.m) > 0.0) top = std::max(top, t.log_scale);
    if (!std::isfinite(top)) {
        const int d = terms.empty() ? 1 : static_cast<int>(terms.front().m.size());
        return ScaledVec{cvec_zero(d), 0.0};
    }
    ScaledVec out{cvec_zero(static_cast<int>(terms.front().m.size())), top};
    for (const auto& t : terms) {
        const double w = std::exp(t.log_scale - top);
        for (size_t j = 0; j < out.m.size(); ++j) out.m[j] += w * t.m[j];
    }
    return out;
}

}  // namespace mlt

#endif  // MLT_TYPES_HPP_
