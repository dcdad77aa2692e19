#include <cmath>

#include "core/oracle.hpp"
#include "doctest.h"

using namespace orbitloc;

namespace {

OrbitSpec su2() {
    return OrbitSpec::make(AlgebraSpec::build(Family::su, 2), Vector::Constant(1, 0.5), MultiplicityMode::compact);
}

} // namespace

// Haar average over the su(2) orbit of e^{<X, zeta>} is sin(8al)/(8al), so c = 8l = 4.
TEST_CASE("compact calibration recovers c = 8 l") {
    const OrbitSpec s = su2();
    const Calibration cal = calibrate_constant(s, s.algebra->cartan_element(Vector::Constant(1, 0.05)), 9, 200000);
    CHECK(std::abs(cal.c - 4.0) < 4 * cal.c_stderr + 1e-3);
    CHECK(cal.c_stderr < 0.01);
}

TEST_CASE("Monte Carlo agrees with the fixed-point value") {
    const OrbitSpec s = su2();
    const AlgebraElement x = s.algebra->cartan_element(Vector::Constant(1, 0.4));
    const McEstimate m = mc_fourier_integral(s, x, 5, 200000, 4.0);
    const double f = std::sin(1.6) / 0.4;
    CHECK(std::abs(m.mean.real() - f) < 4 * m.std_error);
    CHECK(m.samples == 200000);
}

TEST_CASE("Monte Carlo is deterministic per seed") {
    const OrbitSpec s = su2();
    const AlgebraElement x = s.algebra->cartan_element(Vector::Constant(1, 0.7));
    const McEstimate a = mc_raw_average(s, x, 3, 10000);
    const McEstimate b = mc_raw_average(s, x, 3, 10000);
    const McEstimate c = mc_raw_average(s, x, 4, 10000);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.mean != c.mean);
}

TEST_CASE("orbit samples are Hermitian with the spectrum of lambda") {
    const OrbitSpec s = su2();
    for (const CMatrix& z : haar_orbit_sample(s, 1, 50)) {
        CHECK((z - z.adjoint()).norm() < 1e-13);
        CHECK(std::abs(z.trace()) < 1e-13);
        CHECK(std::abs(z.determinant() + 0.25) < 1e-12);
    }
}

TEST_CASE("damped sl(2,R) integral fixes s0 = -1") {
    const OrbitSpec s = OrbitSpec::make(AlgebraSpec::build(Family::sl_real, 2), Vector::Constant(1, 0.5),
                                        MultiplicityMode::maximally_split, 1);
    const AlgebraElement x = s.algebra->cartan_element(Vector::Constant(1, 1.0));
    const SignCalibration sc = calibrate_sign(s, x, {0.1, 0.05, 0.025});
    CHECK(sc.s0 == -1);
    // the eps -> 0 limit is cos(4) = -0.65364
    CHECK(sc.extrapolated == doctest::Approx(std::cos(4.0)).epsilon(2e-3));
    CHECK(sc.formula_value == doctest::Approx(-std::cos(4.0)));
    REQUIRE(sc.estimates.size() == 3);
    CHECK(sc.estimates[0] == doctest::Approx(-0.6487).epsilon(1e-3));
}

TEST_CASE("damped oracle input checks") {
    const OrbitSpec s = OrbitSpec::make(AlgebraSpec::build(Family::sl_real, 2), Vector::Constant(1, 0.5),
                                        MultiplicityMode::maximally_split, -1);
    const AlgebraElement x = s.algebra->cartan_element(Vector::Constant(1, 1.0));
    CHECK_THROWS_AS(damped_oscillatory_integral(s, x, {0.05, 0.1}), Error);
    Vector v = Vector::Zero(3);
    v(1) = 1.0;
    v(2) = -1.0;
    CHECK_THROWS_AS(damped_oscillatory_integral(s, AlgebraElement::real(v), {0.1}), Error);
    CHECK_THROWS_AS(calibrate_sign(su2(), su2().algebra->cartan_element(Vector::Constant(1, 1.0)), {0.1}), Error);
}

TEST_CASE("Neville extrapolation is exact on polynomials") {
    const std::vector<double> eps{0.4, 0.2, 0.1};
    std::vector<double> v;
    for (double e : eps)
        v.push_back(1.5 - 2.0 * e + 0.75 * e * e);
    CHECK(extrapolate_to_zero(eps, v) == doctest::Approx(1.5).epsilon(1e-14));
}
