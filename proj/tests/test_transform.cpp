#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mlt/catalog.hpp"
#include "mlt/kernels.hpp"
#include "mlt/transform.hpp"

using namespace mlt;

namespace {

struct CatalogOnce {
    CatalogOnce() { catalog_register_builtin(); }
} catalog_once;

EnvelopedFunction exp_growth_2d() { return exponential_function({1.0, 1.0}); }

}  // namespace

TEST_CASE("forward transform closed forms") {
    const auto one = constant_function(1, cplx{1.0, 0.0});
    auto tr = laplace_forward(one, {cplx{2.0, 0.0}});
    CHECK(tr.status == TransformResult::Status::converged);
    CHECK(tr.value[0].real() == doctest::Approx(0.5).epsilon(1e-10));

    const auto& e2 = catalog_get("exp-2d");
    tr = laplace_forward(e2.density, {cplx{3.0, 0.0}, cplx{5.0, 0.0}});
    CHECK(tr.value[0].real() == doctest::Approx(1.0 / 6.0).epsilon(1e-9));

    const auto zero = constant_function(1, cplx{0.0, 0.0}, 1e-300);
    tr = laplace_forward(zero, {cplx{1.0, 0.0}});
    CHECK(std::abs(tr.value[0]) <= 1e-15);
}

TEST_CASE("weighted transform closed forms") {
    const auto one = constant_function(1, cplx{1.0, 0.0});
    auto tr = weighted_transform(one, {cplx{1.0, 0.0}}, {3});
    CHECK(tr.value[0].real() == doctest::Approx(6.0).epsilon(1e-9));

    const auto one2 = constant_function(2, cplx{1.0, 0.0});
    tr = weighted_transform(one2, {cplx{1.0, 0.0}, cplx{1.0, 0.0}}, {1, 1});
    CHECK(tr.value[0].real() == doctest::Approx(1.0).epsilon(1e-9));

    const auto a = weighted_transform(one, {cplx{2.5, 0.0}}, {0});
    const auto b = laplace_forward(one, {cplx{2.5, 0.0}});
    CHECK(std::abs(a.value[0] - b.value[0]) <= 1e-13);
}

TEST_CASE("halfplane guard and error paths") {
    auto f = exponential_function({1.0});
    f.envelope_verified = true;
    CHECK_THROWS_WITH_AS(laplace_forward(f, {cplx{0.5, 0.0}}),
                         doctest::Contains("outside-declared-halfplane"), Error);
    CHECK_THROWS_WITH_AS(laplace_forward(f, {cplx{2.0, 0.0}, cplx{2.0, 0.0}}),
                         doctest::Contains("dim-mismatch"), Error);

    // without a verified envelope the call is best-effort and reports failure
    auto g = exponential_function({1.0});
    const auto tr = laplace_forward(g, {cplx{0.5, 0.0}});
    CHECK(tr.status == TransformResult::Status::failed);
}

TEST_CASE("tensor separability matches nested quadrature") {
    const auto sep = catalog_get("exp-decay-2d").density;
    EnvelopedFunction gen = sep;
    gen.factors.clear();
    const std::vector<cplx> lambda{cplx{0.5, 0.3}, cplx{1.5, -0.2}};
    const auto a = laplace_forward(sep, lambda, 1e-10);
    const auto b = laplace_forward(gen, lambda, 1e-9);
    CHECK(std::abs(a.value[0] - b.value[0]) <= 1e-8);
}

TEST_CASE("linearity of the transform") {
    const auto one = constant_function(1, cplx{1.0, 0.0});
    const auto ex = exponential_function({-1.0});
    EnvelopedFunction mix;
    mix.n = 1;
    mix.d = 1;
    mix.omega = {0.0};
    mix.M = 3.0;
    mix.eval = [one, ex](const TimePoint& t) {
        return cvec{2.0 * one.eval(t)[0] - 0.5 * ex.eval(t)[0]};
    };
    const cplx lambda{1.7, 0.0};
    const cplx lhs = laplace_forward(mix, {lambda}, 1e-10).value[0];
    const cplx rhs = 2.0 * laplace_forward(one, {lambda}, 1e-10).value[0] -
                     0.5 * laplace_forward(ex, {lambda}, 1e-10).value[0];
    CHECK(std::abs(lhs - rhs) <= 2e-10);
}

TEST_CASE("convolution theorem") {
    // a = e^{-t}, b = 1: (a *0 b)(t) = 1 - e^{-t}, L = 1/(lambda (lambda+1))
    const auto a = smooth_operand([](double t) { return cplx{std::exp(-t), 0.0}; });
    const auto b = smooth_operand([](double) { return cplx{1.0, 0.0}; });
    EnvelopedFunction conv;
    conv.n = 1;
    conv.d = 1;
    conv.omega = {0.0};
    conv.M = 1.0;
    conv.eval = [a, b](const TimePoint& t) {
        return cvec{t[0] == 0.0 ? cplx{0.0, 0.0} : convolve_finite(a, b, t[0], 1e-11)};
    };
    for (double l : {1.0, 2.0}) {
        const cplx lhs = laplace_forward(conv, {cplx{l, 0.0}}, 1e-9).value[0];
        CHECK(std::abs(lhs - 1.0 / (l * (l + 1.0))) <= 1e-8);
    }
}

TEST_CASE("region probe: three classifications") {
    const auto& osc = catalog_get("dirichlet-osc").density;
    const auto rep1 = region_probe(osc, {cplx{0.5, 0.0}}, {4.0, 6.0, 8.0, 10.0});
    CHECK(rep1.cls == RegionClass::convergent);
    // conditional only: absolute partials still growing
    REQUIRE(rep1.absolute_partials.size() >= 2);
    CHECK(rep1.absolute_partials.back() >
          rep1.absolute_partials.front() + 1.0);

    const auto g2 = exp_growth_2d();
    const auto rep2 = region_probe(g2, {cplx{2.0, 0.0}, cplx{2.0, 0.0}}, {6.0, 10.0, 14.0, 18.0});
    CHECK(rep2.cls == RegionClass::absolute);

    const auto rep3 = region_probe(g2, {cplx{0.5, 0.0}, cplx{0.5, 0.0}}, {2.0, 6.0, 10.0, 16.0});
    CHECK(rep3.cls == RegionClass::divergence_evidence);
}

TEST_CASE("region probe monotone classification") {
    const auto f = exponential_function({-1.0});
    const std::vector<double> sched{2.0, 4.0, 8.0, 16.0};
    const auto lo = region_probe(f, {cplx{0.5, 0.0}}, sched);
    CHECK(lo.cls == RegionClass::absolute);
    const auto hi = region_probe(f, {cplx{2.5, 0.0}}, sched);
    CHECK(hi.cls == RegionClass::absolute);
}

TEST_CASE("region probe schedule validation") {
    const auto f = exponential_function({-1.0});
    CHECK_THROWS_WITH_AS(region_probe(f, {cplx{1.0, 0.0}}, {1.0, 2.0, 3.0}),
                         doctest::Contains("schedule-shape"), Error);
    CHECK_THROWS_WITH_AS(region_probe(f, {cplx{1.0, 0.0}}, {1.0, 2.0, 2.0, 3.0}),
                         doctest::Contains("schedule-shape"), Error);
}
