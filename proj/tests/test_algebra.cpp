#include <cmath>

#include "core/cartan.hpp"
#include "core/iwasawa.hpp"
#include "doctest.h"

using namespace orbitloc;

TEST_CASE("dimensions, rank and trace scale") {
    for (int n = 2; n <= 4; ++n)
        for (Family f : {Family::su, Family::sl_real}) {
            const auto a = AlgebraSpec::build(f, n);
            CHECK(a->dimension() == n * n - 1);
            CHECK(a->rank() == n - 1);
            CHECK(a->trace_scale() == doctest::Approx(2.0 * n));
        }
}

TEST_CASE("Killing form matches 2n tr(XY)") {
    for (Family f : {Family::su, Family::sl_real}) {
        const auto a = AlgebraSpec::build(f, 3);
        for (int i = 0; i < a->dimension(); ++i)
            for (int j = 0; j < a->dimension(); ++j) {
                const Complex tr = (a->basis_matrix(i) * a->basis_matrix(j)).trace();
                CHECK(std::abs(a->killing_matrix()(i, j) - 6.0 * tr) < 1e-12);
            }
    }
}

TEST_CASE("su(2) brackets") {
    const auto a = AlgebraSpec::build(Family::su, 2);
    // [iH, A] = 2 S, [iH, S] = -2 A with A = E12 - E21, S = i(E12 + E21)
    const auto h = AlgebraElement::real(Vector::Unit(3, 0));
    const auto x = AlgebraElement::real(Vector::Unit(3, 1));
    const auto y = AlgebraElement::real(Vector::Unit(3, 2));
    CHECK((a->bracket(h, x).coords - 2.0 * y.coords).norm() < 1e-14);
    CHECK((a->bracket(h, y).coords + 2.0 * x.coords).norm() < 1e-14);
}

TEST_CASE("regular semisimple classification") {
    const auto sl = AlgebraSpec::build(Family::sl_real, 2);
    CHECK(sl->is_regular_semisimple(sl->cartan_element(Vector::Constant(1, 1.0))));
    CHECK_FALSE(sl->is_regular_semisimple(sl->cartan_element(Vector::Zero(1))));
    Vector nil = Vector::Zero(3);
    nil(1) = 1.0; // E12
    CHECK_FALSE(sl->is_regular_semisimple(AlgebraElement::real(nil)));
    Vector rot = Vector::Zero(3);
    rot(1) = 1.0;
    rot(2) = -1.0; // E12 - E21, eigenvalues +-i
    CHECK(sl->is_regular_semisimple(AlgebraElement::real(rot)));

    const auto su3 = AlgebraSpec::build(Family::su, 3);
    Vector c(2);
    c << 1.0, 0.5; // diag i(1, -0.5, -0.5): repeated eigenvalue
    CHECK_FALSE(su3->is_regular_semisimple(su3->cartan_element(c)));
    c << 1.0, 0.3;
    CHECK(su3->is_regular_semisimple(su3->cartan_element(c)));
    c << 1.0, 0.5 + 3e-8; // separation inside the guard band
    CHECK_THROWS_AS(su3->is_regular_semisimple(su3->cartan_element(c)), Error);
}

TEST_CASE("iso_I round trip and pairing") {
    const auto a = AlgebraSpec::build(Family::sl_real, 3);
    Vector v(8);
    v << 0.3, -1.2, 0.5, 0.25, -0.7, 1.1, 0.05, -0.4;
    const auto x = AlgebraElement::real(v);
    CHECK((a->iso_I_inv(a->iso_I(x)).coords - x.coords).norm() < 1e-13);
    CHECK(std::abs(a->pairing(a->iso_I(x), x) - a->killing_form(x, x)) < 1e-12);
}

TEST_CASE("Weyl group labels and signs") {
    const WeylGroup w = WeylGroup::type_a(3);
    CHECK(w.order() == 6);
    CHECK(w.elements()[0].label == "e");
    int odd = 0;
    for (const auto& e : w.elements())
        odd += e.sign < 0;
    CHECK(odd == 3);
    CHECK(w.find("s1s2").length() == 2);
    CHECK(w.find("s1s2s1").sign == -1);
}

TEST_CASE("reduce_to_cartan undoes a conjugation") {
    const auto a = AlgebraSpec::build(Family::sl_real, 2);
    CMatrix g(2, 2);
    g << 2.0, 1.0, 1.0, 1.0;
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = -0.7;
    d(1, 1) = 0.7;
    const auto x = a->from_matrix(g * d * g.inverse(), Field::real);
    const auto red = reduce_to_cartan(a, x, standard_cartan(a));
    REQUIRE(red.has_value());
    CHECK(red->diagonal(0).real() == doctest::Approx(0.7));
    CHECK(red->diagonal(1).real() == doctest::Approx(-0.7));

    Vector rot = Vector::Zero(3);
    rot(1) = 1.0;
    rot(2) = -1.0;
    CHECK_FALSE(reduce_to_cartan(a, AlgebraElement::real(rot), standard_cartan(a)).has_value());
}

TEST_CASE("Iwasawa pieces") {
    for (Family f : {Family::su, Family::sl_real}) {
        const auto a = AlgebraSpec::build(f, 3);
        const IwasawaDatum iw = iwasawa(a);
        CHECK(iw.k.cols() + iw.a.cols() + iw.n.cols() == 8);
        if (f == Family::su) {
            CHECK(iw.k.cols() == 8);
        } else {
            CHECK(iw.k.cols() == 3);
            CHECK(iw.a.cols() == 2);
            CHECK(iw.n.cols() == 3);
            CHECK(iw.positive.size() == 3);
        }
    }
}
