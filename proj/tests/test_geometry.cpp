#include <cmath>

#include "core/geometry_sl2.hpp"
#include "doctest.h"

using namespace orbitloc;

namespace {

CVector ell(double l) {
    CVector e(2);
    e << Complex(0, l), Complex(0, -l);
    return e;
}

CMatrix shear() {
    CMatrix g(2, 2);
    g << 1.0, Complex(0, 0.5), 0.0, 1.0;
    return g;
}

} // namespace

TEST_CASE("flag point normalization and charts") {
    const FlagPoint p = FlagPoint::from(Complex(0, 2), Complex(1, 0));
    CHECK(p.chart == 0);
    CHECK(p.z0.imag() == 0.0);
    CHECK(std::abs(std::norm(p.z0) + std::norm(p.z1) - 1.0) < 1e-15);
    CHECK(std::abs(p.affine() - Complex(0, -0.5)) < 1e-15);
    const FlagPoint q = FlagPoint::from(0.1, 1.0);
    CHECK(q.chart == 1);
    CHECK(q.distance_to_real() == 0.0);
}

TEST_CASE("moment map image is nilpotent and linear in the fiber") {
    const Sl2Model m;
    PhiloxStream rng(3, 0);
    for (int k = 0; k < 100; ++k) {
        const CotangentPoint z{random_flag_point(rng), Complex(0.7, -1.3)};
        const CMatrix mu = m.moment(z);
        CHECK(std::abs(mu.trace()) < 1e-12);
        CHECK(std::abs(mu.determinant()) < 1e-12);
        CHECK((m.moment({z.base, 2.0 * z.eta}) - 2.0 * mu).norm() < 1e-12);
    }
}

TEST_CASE("lambda_x at the base point is lambda") {
    const Sl2Model m;
    const CMatrix l = m.lambda_at(FlagPoint::from(0.0, 1.0), ell(0.5));
    CHECK((l - CMatrix(ell(0.5).asDiagonal())).norm() < 1e-15);
}

TEST_CASE("twisted moment map round trip, both twists") {
    for (const Sl2Model& m : {Sl2Model(), Sl2Model(shear())}) {
        PhiloxStream rng(8, 1);
        for (int k = 0; k < 200; ++k) {
            const CotangentPoint z{random_flag_point(rng), Complex(rng.normal_pair()[0], rng.normal_pair()[1])};
            const CMatrix y = m.twisted_moment(z, ell(0.5));
            const CotangentPoint back = m.twisted_moment_inverse(y, ell(0.5));
            CHECK(std::abs(back.base.z0 - z.base.z0) + std::abs(back.base.z1 - z.base.z1) < 1e-10);
            CHECK(std::abs(back.component(z.base.chart) - z.eta) < 1e-10);
        }
    }
}

TEST_CASE("off-orbit matrices are rejected") {
    const Sl2Model m;
    CMatrix y = CMatrix(ell(0.5).asDiagonal());
    y(0, 0) *= 1.5;
    y(1, 1) *= 1.5;
    CHECK_THROWS_AS(m.twisted_moment_inverse(y, ell(0.5)), Error);
}

TEST_CASE("twist must lie in SL(2,C)") {
    CMatrix g = CMatrix::Identity(2, 2) * 2.0;
    CHECK_THROWS_AS(Sl2Model{g}, Error);
}

TEST_CASE("orbit image and bound") {
    const Sl2Model m(shear());
    const OrbitImageReport r = orbit_image_check(m, ell(0.5), 4, 2000);
    CHECK(r.max_imag_ratio < 1e-9);
    CHECK(r.base_offset < 1e-12);
    CHECK(r.max_re_moment <= r.bound * (1 + 1e-12));
    CHECK(r.bound > 0.5);
}

TEST_CASE("fiber over a point of RP^1") {
    const FiberReport f = fiber_structure_check(Sl2Model(shear()), ell(0.5), 0.9, 0.3, 0.5, {0, 1, -3, 30});
    CHECK(f.invariant_drift < 1e-8);
    CHECK(f.base_drift < 1e-8);
    CHECK(f.conormal_defect < 1e-9);
    CHECK(f.conormal_rank == 1);
    CHECK(f.expected_rank == 1);
}

TEST_CASE("scaling defects shrink linearly under the complex twist") {
    std::vector<double> s;
    for (int k = 0; k <= 20; ++k)
        s.push_back(std::ldexp(1.0, -k));
    const ScalingReport r = cycle_scaling_limit(Sl2Model(shear()), ell(0.5), s, 200, 11);
    CHECK(r.identity_residual == 0.0);
    CHECK(r.rows.back().conormal_distance < 1e-5);
    CHECK(r.rows.back().imaginary_defect < 1e-5);
    CHECK(r.slope_distance == doctest::Approx(1.0).epsilon(0.05));
    CHECK(r.slope_imaginary == doctest::Approx(1.0).epsilon(0.05));
    CHECK(r.monotone);

    const ScalingReport flat = cycle_scaling_limit(Sl2Model(), ell(0.5), s, 50, 11);
    CHECK(flat.rows.back().imaginary_defect < 1e-13);
}
