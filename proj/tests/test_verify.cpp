#include "core/verify.hpp"
#include "doctest.h"

using namespace orbitloc;

namespace {

void require_pass(const Report& r) {
    for (const auto& c : r.checks) {
        INFO(r.suite, ": ", c.name, " measured ", c.measured, " threshold ", c.threshold, " ", c.detail);
        CHECK(c.passed);
    }
}

} // namespace

TEST_CASE("structural suites pass for every supported form") {
    for (Family f : {Family::su, Family::sl_real})
        for (int n : {2, 3}) {
            VerifyOptions opt;
            opt.family = f;
            opt.n = n;
            require_pass(run_suite("algebra", opt));
            require_pass(run_suite("fixedpoints", opt));
        }
}

TEST_CASE("localize suite on the rank-one forms") {
    for (Family f : {Family::su, Family::sl_real}) {
        VerifyOptions opt;
        opt.family = f;
        require_pass(run_suite("localize", opt));
    }
}

TEST_CASE("geometry suite") {
    require_pass(run_suite("geometry", VerifyOptions{}));
}

TEST_CASE("unknown suite name") {
    CHECK_THROWS_AS(run_suite("nope", VerifyOptions{}), Error);
}

TEST_CASE("random elements") {
    PhiloxStream rng(1, 0);
    const auto sl = AlgebraSpec::build(Family::sl_real, 3);
    for (int k = 0; k < 20; ++k) {
        CHECK(sl->is_regular_semisimple(random_regular_element(rng, *sl, 1.0, 0.05)));
        const AlgebraElement e = random_elliptic_element(rng, *sl);
        CHECK(sl->spectrum(e).eigenvalues.imag().cwiseAbs().maxCoeff() > 0.1);
    }
}
