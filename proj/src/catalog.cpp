#include "mlt/catalog.hpp"

#include <cmath>
#include <map>

#include "mlt/calculus.hpp"
#include "mlt/transform.hpp"

namespace mlt {

namespace {

std::map<std::string, CatalogEntry>& registry() {
    static std::map<std::string, CatalogEntry> entries;
    return entries;
}

void smoke_check(const CatalogEntry& e) {
    if (!e.has_oracle) return;
    std::vector<std::vector<cplx>> points;
    for (double s : {0.7, 1.3, 2.1}) {
        std::vector<cplx> lambda(static_cast<size_t>(e.n));
        for (int i = 0; i < e.n; ++i)
            lambda[static_cast<size_t>(i)] =
                cplx{e.density.omega[static_cast<size_t>(i)] + s + 0.1 * i, 0.0};
        points.push_back(std::move(lambda));
    }
    for (const auto& lambda : points) {
        const TransformResult tr = laplace_forward(e.density, lambda, 1e-9);
        const cvec target = e.oracle.eval(lambda);
        for (size_t j = 0; j < target.size(); ++j)
            if (std::abs(target[j] - tr.value[j]) > 1e-7)
                throw Error("fixture-inconsistent",
                            e.name + ": density transform disagrees with oracle");
    }
    if (e.oracle.has_closed_form() && oracle_smoke_check(e.oracle, points) > 1e-5)
        throw Error("fixture-inconsistent",
                    e.name + ": closed-form derivative disagrees with finite differences");
}

Func1D exp_factor(double w) {
    return Func1D{[w](double t) { return cplx{std::exp(w * t), 0.0}; }, 1.0, 1.0, w};
}

EnvelopedFunction scalar_1d(Func1D f, double omega, double M) {
    return EnvelopedFunction::from_factors({{std::move(f)}}, {omega}, M);
}

}  // namespace

void catalog_register(CatalogEntry entry, bool verify) {
    if (registry().count(entry.name))
        throw Error("fixture-inconsistent", "duplicate entry: " + entry.name);
    if (verify) smoke_check(entry);
    registry().emplace(entry.name, std::move(entry));
}

std::vector<std::string> catalog_list() {
    std::vector<std::string> names;
    for (const auto& kv : registry()) names.push_back(kv.first);
    return names;
}

const CatalogEntry& catalog_get(const std::string& name) {
    auto it = registry().find(name);
    if (it == registry().end()) throw Error("no-such-entry", name);
    return it->second;
}

void catalog_register_builtin() {
    static bool done = false;
    if (done) return;
    done = true;

    auto add = [](std::string name, int n, int d, EnvelopedFunction density, TransformOracle F,
                  std::string note) {
        CatalogEntry e;
        e.name = std::move(name);
        e.n = n;
        e.d = d;
        e.density = std::move(density);
        e.oracle = std::move(F);
        e.note = std::move(note);
        catalog_register(std::move(e));
    };

    add("exp-1d", 1, 1, exponential_function({1.0}), pole_sum_oracle({{{1.0, 0.0}, {1.0, 0.0}}}, 1.0),
        "e^t <-> 1/(lambda-1)");
    add("exp-decay-1d", 1, 1, exponential_function({-1.0}),
        pole_sum_oracle({{{1.0, 0.0}, {-1.0, 0.0}}}, -1.0), "e^{-t} <-> 1/(lambda+1)");
    add("one-1d", 1, 1, constant_function(1, cplx{1.0, 0.0}),
        pole_sum_oracle({{{1.0, 0.0}, {0.0, 0.0}}}, 0.0), "1 <-> 1/lambda");
    add("poly-t-1d", 1, 1,
        scalar_1d(Func1D{[](double t) { return cplx{t, 0.0}; }, 2.0, 1.0, 1.0}, 1.0, 1.0),
        power_oracle(2.0), "t <-> 1/lambda^2; envelope t <= e^t");
    add("damped-cos-1d", 1, 1,
        scalar_1d(Func1D{[](double t) { return cplx{std::exp(-t) * std::cos(t), 0.0}; }, 1.0, 1.0,
                         -1.0},
                  -1.0, 1.0),
        pole_sum_oracle({{{0.5, 0.0}, {-1.0, 1.0}}, {{0.5, 0.0}, {-1.0, -1.0}}}, -1.0),
        "e^{-t} cos t, poles at -1 +- i");
    add("monomial-g", 1, 1,
        scalar_1d(Func1D{[](double t) { return cplx{std::pow(t, -0.5) / std::tgamma(0.5), 0.0}; },
                         0.5, 1.0, 0.0},
                  0.0, 1.0),
        power_oracle(0.5), "g_{1/2} <-> lambda^{-1/2}; integrable origin singularity");
    registry().at("monomial-g").singular_density = true;

    {
        // e^t sin(e^t): conditionally convergent specimen, no oracle attached.
        CatalogEntry e;
        e.name = "dirichlet-osc";
        e.has_oracle = false;
        e.oscillatory = true;
        e.note = "e^t sin(e^t); phase zeros at t = ln(m pi)";
        EnvelopedFunction f = scalar_1d(
            Func1D{[](double t) { return cplx{std::exp(t) * std::sin(std::exp(t)), 0.0}; }, 1.0,
                   1.0, 1.0},
            1.0, 1.0);
        f.osc_zeros = [](double T, int count) {
            std::vector<double> zeros;
            for (long m = 1;; ++m) {
                const double z = std::log(static_cast<double>(m) * M_PI);
                if (z > T) break;
                if (z > 0.0) zeros.push_back(z);
            }
            if (count > 0 && static_cast<long>(zeros.size()) > count)
                zeros.erase(zeros.begin(), zeros.end() - count);
            return zeros;
        };
        e.density = std::move(f);
        catalog_register(std::move(e));
    }

    add("exp-2d", 2, 1,
        EnvelopedFunction::from_factors({{exp_factor(1.0), exp_factor(2.0)}}, {1.0, 2.0}, 1.0),
        tensor_oracle({pole_sum_oracle({{{1.0, 0.0}, {1.0, 0.0}}}, 1.0),
                       pole_sum_oracle({{{1.0, 0.0}, {2.0, 0.0}}}, 2.0)}),
        "e^{t1+2t2} <-> 1/((l1-1)(l2-2))");
    add("one-2d", 2, 1, constant_function(2, cplx{1.0, 0.0}),
        tensor_oracle({pole_sum_oracle({{{1.0, 0.0}, {0.0, 0.0}}}, 0.0),
                       pole_sum_oracle({{{1.0, 0.0}, {0.0, 0.0}}}, 0.0)}),
        "1 on the quadrant <-> 1/(l1 l2)");
    add("exp-decay-2d", 2, 1, exponential_function({-1.0, -1.0}),
        tensor_oracle({pole_sum_oracle({{{1.0, 0.0}, {-1.0, 0.0}}}, -1.0),
                       pole_sum_oracle({{{1.0, 0.0}, {-1.0, 0.0}}}, -1.0)}),
        "e^{-t1-t2} <-> 1/((l1+1)(l2+1))");
    add("exp-decay-3d", 3, 1, exponential_function({-1.0, -1.0, -1.0}),
        tensor_oracle({pole_sum_oracle({{{1.0, 0.0}, {-1.0, 0.0}}}, -1.0),
                       pole_sum_oracle({{{1.0, 0.0}, {-1.0, 0.0}}}, -1.0),
                       pole_sum_oracle({{{1.0, 0.0}, {-1.0, 0.0}}}, -1.0)}),
        "e^{-t1-t2-t3} on the octant");
    add("vec-exp-1d", 1, 2,
        EnvelopedFunction::from_factors({{exp_factor(1.0)}, {exp_factor(2.0)}}, {2.0}, 1.0),
        stack_oracle({pole_sum_oracle({{{1.0, 0.0}, {1.0, 0.0}}}, 1.0),
                      pole_sum_oracle({{{1.0, 0.0}, {2.0, 0.0}}}, 2.0)}),
        "C^2 stack (e^t, e^{2t})");
}

}  // namespace mlt
