#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mlt/calculus.hpp"
#include "mlt/catalog.hpp"
#include "mlt/transform.hpp"

using namespace mlt;

namespace {

struct CatalogOnce {
    CatalogOnce() { catalog_register_builtin(); }
} catalog_once;

double rel_dev(const ScaledVec& a, const ScaledVec& b) {
    const cvec va = a.value();
    const cvec vb = b.value();
    double num = 0.0, den = 0.0;
    for (size_t j = 0; j < va.size(); ++j) {
        num = std::max(num, std::abs(va[j] - vb[j]));
        den = std::max(den, std::abs(vb[j]));
    }
    return num / std::max(den, 1e-300);
}

}  // namespace

TEST_CASE("closed-form derivative values") {
    const auto& one = catalog_get("one-1d");
    auto d = mixed_derivative(one.oracle, {cplx{1.0, 0.0}}, {3}, DerivMethod::closed_form);
    CHECK(d.value()[0].real() == doctest::Approx(-6.0).epsilon(1e-13));

    const auto& one2 = catalog_get("one-2d");
    d = mixed_derivative(one2.oracle, {cplx{1.0, 0.0}, cplx{1.0, 0.0}}, {1, 1},
                         DerivMethod::closed_form);
    CHECK(d.value()[0].real() == doctest::Approx(1.0).epsilon(1e-13));

    // zeroth derivative returns the oracle value
    d = mixed_derivative(one.oracle, {cplx{2.5, 0.0}}, {0}, DerivMethod::closed_form);
    CHECK(d.value()[0].real() == doctest::Approx(0.4).epsilon(1e-13));
}

TEST_CASE("closed-form vs cauchy to high order") {
    for (const char* name : {"exp-1d", "damped-cos-1d", "monomial-g", "exp-2d"}) {
        const auto& e = catalog_get(name);
        std::vector<cplx> lambda;
        for (double w : e.oracle.omega) lambda.emplace_back(w + 2.0, 0.0);
        MultiIndex v(static_cast<size_t>(e.n), 0);
        for (int total = 1; total <= 10; total += 3) {
            v[0] = total;
            if (e.n > 1) {
                v[0] = total / 2;
                v[1] = total - total / 2;
            }
            const auto cf = mixed_derivative(e.oracle, lambda, v, DerivMethod::closed_form);
            const auto cy = mixed_derivative(e.oracle, lambda, v, DerivMethod::cauchy);
            CAPTURE(name);
            CAPTURE(total);
            CHECK(rel_dev(cy, cf) <= 1e-9);
        }
    }
}

TEST_CASE("cauchy vs finite differences at low order") {
    for (const char* name : {"exp-decay-1d", "poly-t-1d"}) {
        const auto& e = catalog_get(name);
        const std::vector<cplx> lambda{cplx{e.oracle.omega[0] + 2.0, 0.0}};
        for (int k = 1; k <= 3; ++k) {
            const auto cy = mixed_derivative(e.oracle, lambda, {k}, DerivMethod::cauchy);
            const auto fd = mixed_derivative(e.oracle, lambda, {k}, DerivMethod::finite_difference);
            CAPTURE(name);
            CHECK(rel_dev(fd, cy) <= 1e-5);
        }
    }
}

TEST_CASE("factorial scaling sanity") {
    const auto& e = catalog_get("exp-1d");  // pole at 1
    const cplx lambda{3.0, 0.0};
    for (int v : {0, 2, 7, 15}) {
        const auto cf = mixed_derivative(e.oracle, {lambda}, {v}, DerivMethod::closed_form);
        const double ratio =
            std::exp(cf.log_sup() + (v + 1) * std::log(2.0) - std::lgamma(v + 1.0));
        CHECK(ratio == doctest::Approx(1.0).epsilon(1e-12));
        if (v <= 15) {
            const auto cy = mixed_derivative(e.oracle, {lambda}, {v}, DerivMethod::cauchy);
            const double ratio_cy =
                std::exp(cy.log_sup() + (v + 1) * std::log(2.0) - std::lgamma(v + 1.0));
            CHECK(ratio_cy == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("mixed-partial symmetry on the cauchy path") {
    const auto& e = catalog_get("exp-2d");
    // same oracle with the coordinates exchanged
    TransformOracle swapped = e.oracle;
    swapped.omega = {e.oracle.omega[1], e.oracle.omega[0]};
    auto base_eval = e.oracle.eval;
    swapped.eval = [base_eval](const std::vector<cplx>& l) {
        return base_eval({l[1], l[0]});
    };
    auto base_sing = e.oracle.singularity_distance;
    swapped.singularity_distance = [base_sing](const std::vector<cplx>& l) {
        return base_sing({l[1], l[0]});
    };
    swapped.derivative = nullptr;
    const std::vector<cplx> lambda{cplx{2.5, 0.0}, cplx{4.0, 0.0}};
    const auto a = mixed_derivative(e.oracle, lambda, {2, 1}, DerivMethod::cauchy);
    const auto b =
        mixed_derivative(swapped, {lambda[1], lambda[0]}, {1, 2}, DerivMethod::cauchy);
    CHECK(rel_dev(a, b) <= 1e-10);
    const auto cf = mixed_derivative(e.oracle, lambda, {2, 1}, DerivMethod::closed_form);
    CHECK(rel_dev(a, cf) <= 1e-9);
}

TEST_CASE("derivative order and radius limits") {
    const auto& e = catalog_get("exp-1d");
    CHECK_THROWS_WITH_AS(
        mixed_derivative(e.oracle, {cplx{2.0, 0.0}}, {70}, DerivMethod::cauchy),
        doctest::Contains("order-unsupported"), Error);
    CHECK_THROWS_WITH_AS(
        mixed_derivative(e.oracle, {cplx{2.0, 0.0}}, {4}, DerivMethod::finite_difference),
        doctest::Contains("order-unsupported"), Error);
    DerivOptions opt;
    opt.radius = {5.0};  // swallows the pole at 1
    CHECK_THROWS_WITH_AS(
        mixed_derivative(e.oracle, {cplx{2.0, 0.0}}, {1}, DerivMethod::cauchy, opt),
        doctest::Contains("radius-too-large"), Error);
}

TEST_CASE("derivative formula residuals") {
    const auto& one = catalog_get("one-1d");
    CHECK(derivative_formula_check(one.density, one.oracle, {cplx{2.0, 0.0}}, {1}, 1e-10) <= 1e-8);
    const auto d = mixed_derivative(one.oracle, {cplx{2.0, 0.0}}, {1}, DerivMethod::closed_form);
    CHECK(d.value()[0].real() == doctest::Approx(-0.25).epsilon(1e-12));

    const auto& e2 = catalog_get("exp-2d");
    const std::vector<cplx> lambda{cplx{3.0, 0.0}, cplx{5.0, 0.0}};
    CHECK(derivative_formula_check(e2.density, e2.oracle, lambda, {1, 0}, 1e-10) <= 1e-8);
    const auto d2 = mixed_derivative(e2.oracle, lambda, {1, 0}, DerivMethod::closed_form);
    CHECK(d2.value()[0].real() == doctest::Approx(-1.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("oracle smoke check on a healthy oracle") {
    const auto& e = catalog_get("damped-cos-1d");
    CHECK(oracle_smoke_check(e.oracle, {{cplx{1.0, 0.0}}, {cplx{0.5, 0.5}}}) <= 1e-5);
}
