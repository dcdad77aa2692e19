#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "core/localize.hpp"
#include "doctest.h"

using namespace orbitloc;

namespace {

OrbitSpec su2(int s0 = 1) {
    return OrbitSpec::make(AlgebraSpec::build(Family::su, 2), Vector::Constant(1, 0.5), MultiplicityMode::compact, s0);
}

OrbitSpec sl2(int s0) {
    return OrbitSpec::make(AlgebraSpec::build(Family::sl_real, 2), Vector::Constant(1, 0.5),
                           MultiplicityMode::maximally_split, s0);
}

AlgebraElement cartan(const OrbitSpec& s, double a) { return s.algebra->cartan_element(Vector::Constant(1, a)); }

} // namespace

// Closed forms for lambda' = 0.5 and X conjugate to diag(a, -a) (times i for su(2)):
// su(2): F = sin(8 a l) / a; sl(2,R) split with s0 = -1: F = cos(8 |a| l) / |a|.
TEST_CASE("su(2) matches the closed form") {
    const OrbitSpec s = su2();
    for (double a : {0.05, 0.3, 1.0, 2.7, -0.6}) {
        const Complex f = fourier_value(s, cartan(s, a)).value;
        CHECK(f.real() == doctest::Approx(std::sin(4.0 * a) / a).epsilon(1e-12));
        CHECK(std::abs(f.imag()) < 1e-12);
    }
}

TEST_CASE("sl(2,R) split matches the closed form") {
    const OrbitSpec s = sl2(-1);
    for (double a : {0.05, 0.3, 1.0, 2.7, -0.6}) {
        const EvalResult r = fourier_value(s, cartan(s, a));
        CHECK(r.value.real() == doctest::Approx(std::cos(4.0 * a) / std::abs(a)).epsilon(1e-12));
        CHECK(r.value.imag() == 0.0);
        CHECK(r.terms.size() == 2);
    }
    const OrbitSpec plus = sl2(1);
    CHECK(fourier_value(plus, cartan(plus, 1.0)).value.real() == doctest::Approx(-std::cos(4.0)));
}

TEST_CASE("conjugated inputs give the same value") {
    const OrbitSpec s = sl2(-1);
    CMatrix g(2, 2);
    g << 1.0, 0.7, 0.0, 1.0;
    const AlgebraElement x = cartan(s, 0.8);
    const Complex f = fourier_value(s, x).value;
    CHECK(std::abs(fourier_value(s, adjoint_action(*s.algebra, g, x)).value - f) < 1e-12);
}

TEST_CASE("elliptic split points vanish exactly") {
    const OrbitSpec s = sl2(-1);
    Vector v = Vector::Zero(3);
    v(1) = 0.9;
    v(2) = -0.9;
    const EvalResult r = fourier_value(s, AlgebraElement::real(v));
    CHECK(r.value == Complex(0.0, 0.0));
    CHECK(r.support_empty);
}

TEST_CASE("wall points are flagged, not evaluated") {
    const OrbitSpec s = su2();
    const EvalResult near = evaluate(s, cartan(s, 1e-9));
    CHECK(near.degenerate);
    CHECK(std::isnan(near.value.real()));
    CHECK_THROWS_AS(fourier_value(s, cartan(s, 1e-9)), Error);

    const auto rows = fourier_grid(s, {cartan(s, 0.5), cartan(s, 0.0), cartan(s, -0.5)});
    REQUIRE(rows.size() == 3);
    CHECK_FALSE(rows[0].result.degenerate);
    CHECK(rows[1].result.degenerate);
    CHECK_FALSE(rows[1].error.empty());
    CHECK(rows[0].result.value == rows[2].result.value);
}

TEST_CASE("Casimir eigenvalue equation") {
    const OrbitSpec s = su2();
    const CasimirResult r = casimir_check(s, cartan(s, 0.2));
    CHECK(r.relative);
    CHECK(r.residual < 1e-6);

    Vector lam(2);
    lam << 0.1, 0.03;
    const OrbitSpec s3 = OrbitSpec::make(AlgebraSpec::build(Family::su, 3), lam, MultiplicityMode::compact);
    Vector c(2);
    c << 0.4, 0.15;
    CHECK(casimir_check(s3, s3.algebra->cartan_element(c)).residual < 1e-4);

    const OrbitSpec l = sl2(-1);
    CHECK(casimir_check(l, cartan(l, 0.3)).residual < 1e-4);
}

TEST_CASE("B-orthonormal basis") {
    const auto a = AlgebraSpec::build(Family::sl_real, 3);
    Matrix basis;
    Vector eta;
    orthonormal_killing_basis(*a, basis, eta);
    const Matrix gram = basis.transpose() * a->killing_matrix() * basis;
    CHECK((gram - Matrix(eta.asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((eta.array() > 0).count() == 5); // signature of sl(3,R): dim p = 5
}

TEST_CASE("Weyl relabeling leaves compact values unchanged") {
    Vector lam(2);
    lam << 0.4, 0.1;
    const OrbitSpec s = OrbitSpec::make(AlgebraSpec::build(Family::su, 3), lam, MultiplicityMode::compact);
    Vector c(2);
    c << 0.7, -0.2;
    const InvarianceResult r = invariance_checks(s, s.algebra->cartan_element(c), CMatrix::Identity(3, 3));
    CHECK(r.weyl_difference < 1e-12);
    CHECK(r.ad_difference < 1e-12);
}
