#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mlt/lcs.hpp"

using namespace mlt;

TEST_CASE("seminorm point values") {
    CHECK(seminorm_eval(Seminorm{{1.0, 1.0}}, {cplx{3, 0}, cplx{-4, 0}}) == 4.0);
    CHECK(seminorm_eval(Seminorm{{2.0, 1.0}}, {cplx{3, 0}, cplx{-4, 0}}) == 6.0);
    CHECK(seminorm_eval(Seminorm{{2.0, 7.0}}, cvec_zero(2)) == 0.0);
    CHECK_THROWS_WITH_AS(seminorm_eval(Seminorm{{1.0}}, cvec_zero(2)),
                         doctest::Contains("dim-mismatch"), Error);
}

TEST_CASE("dual pairing") {
    const cvec x{cplx{3, 0}, cplx{-4, 0}};
    CHECK(dual_pairing({cplx{1, 0}, cplx{0, 0}}, x) == cplx{3, 0});
    CHECK(dual_pairing({cplx{0, 0}, cplx{2, 0}}, x) == cplx{-8, 0});
    CHECK(dual_pairing(cvec_zero(2), x) == cplx{0, 0});
    CHECK_THROWS_WITH_AS(dual_pairing(cvec_zero(1), x), doctest::Contains("dim-mismatch"), Error);
}

TEST_CASE("generalized norm formula") {
    CHECK(generalized_norm_check(Seminorm{{1.0, 1.0}}, {cplx{3, 0}, cplx{-4, 0}}) == 0.0);
    CHECK(generalized_norm_check(Seminorm{{2.0, 1.0}}, {cplx{0, 1}, cplx{5, 0}}) == 0.0);
    CHECK(generalized_norm_check(Seminorm{{3.0, 0.5}}, cvec_zero(2)) == 0.0);
}

TEST_CASE("randomized norm formula and seminorm axioms") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const Seminorm p{{1.5, 0.0, 0.7}};  // degenerate direction included
    for (int it = 0; it < 200; ++it) {
        cvec x(3), y(3);
        for (int j = 0; j < 3; ++j) {
            x[static_cast<size_t>(j)] = cplx{u(rng), u(rng)};
            y[static_cast<size_t>(j)] = cplx{u(rng), u(rng)};
        }
        CHECK(generalized_norm_check(p, x) <= 1e-14);
        // polar inequality
        for (const auto& xs : polar_extreme(p))
            CHECK(std::abs(dual_pairing(xs, x)) <= seminorm_eval(p, x) + 1e-14);
        // homogeneity and triangle inequality
        const cplx alpha{u(rng), u(rng)};
        CHECK(seminorm_eval(p, cvec_scale(x, alpha)) ==
              doctest::Approx(std::abs(alpha) * seminorm_eval(p, x)).epsilon(1e-12));
        cvec s = x;
        cvec_axpy(s, cplx{1.0, 0.0}, y);
        CHECK(seminorm_eval(p, s) <= seminorm_eval(p, x) + seminorm_eval(p, y) + 1e-14);
    }
}

TEST_CASE("polar extreme set skips degenerate weights") {
    const auto ext = polar_extreme(Seminorm{{2.0, 0.0, 1.0}});
    REQUIRE(ext.size() == 2);
    CHECK(ext[0][0] == cplx{2.0, 0.0});
    CHECK(ext[1][2] == cplx{1.0, 0.0});
}

TEST_CASE("seminorm family defaults") {
    const auto fam = SeminormFamily::sup_norm(3);
    CHECK(fam.dim == 3);
    REQUIRE(fam.seminorms.size() == 1);
    CHECK(seminorm_eval(fam.seminorms[0], {cplx{1, 0}, cplx{0, -2}, cplx{0, 0}}) == 2.0);
}
