#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "orbitloc/orbitloc.h"

namespace {

struct Fixture {
    ol_algebra* alg = nullptr;
    ol_orbit* orbit = nullptr;
    Fixture(const char* family, const char* mode, int s0) {
        REQUIRE(ol_algebra_create(family, 2, &alg) == OL_OK);
        const double lambda = 0.5;
        REQUIRE(ol_orbit_create(alg, &lambda, 1, mode, s0, nullptr, nullptr, 0, &orbit) == OL_OK);
    }
    ~Fixture() {
        ol_orbit_destroy(orbit);
        ol_algebra_destroy(alg);
    }
    std::vector<double> cartan(double a) const {
        std::vector<double> basis(3);
        ol_algebra_cartan_basis(alg, basis.data());
        for (double& v : basis)
            v *= a;
        return basis;
    }
};

} // namespace

TEST_CASE("version and status names") {
    CHECK(std::string(ol_version()) == "0.3.0");
    CHECK(std::string(ol_status_name(OL_ERR_NOT_REGULAR)) == "not_regular");
    CHECK(ol_thread_cap() >= 1);
}

TEST_CASE("evaluate through the C API") {
    Fixture f("su", "compact", 1);
    CHECK(ol_algebra_dimension(f.alg) == 3);
    CHECK(ol_orbit_fixed_point_count(f.orbit) == 2);
    const char* label = nullptr;
    int d = 0;
    REQUIRE(ol_orbit_fixed_point(f.orbit, 1, &label, &d) == OL_OK);
    CHECK(std::string(label) == "s1");
    CHECK(d == 1);

    ol_value v{};
    REQUIRE(ol_evaluate(f.orbit, f.cartan(0.3).data(), &v) == OL_OK);
    CHECK(v.re == doctest::Approx(std::sin(1.2) / 0.3).epsilon(1e-12));
    CHECK(v.degenerate == 0);
}

TEST_CASE("grid keeps order and flags walls") {
    Fixture f("sl", "maximally_split", -1);
    std::vector<double> xs;
    for (double a : {0.5, 0.0, 1.0}) {
        const auto x = f.cartan(a);
        xs.insert(xs.end(), x.begin(), x.end());
    }
    ol_grid* g = nullptr;
    REQUIRE(ol_grid_evaluate(f.orbit, xs.data(), 3, &g) == OL_OK);
    REQUIRE(ol_grid_size(g) == 3);
    ol_value v{};
    REQUIRE(ol_grid_value(g, 1, &v) == OL_OK);
    CHECK(v.degenerate == 1);
    CHECK(std::strlen(ol_grid_row_error(g, 1)) > 0);
    REQUIRE(ol_grid_value(g, 2, &v) == OL_OK);
    CHECK(v.re == doctest::Approx(std::cos(4.0)).epsilon(1e-12));
    REQUIRE(ol_grid_term_count(g, 2) == 2);
    ol_term t{};
    REQUIRE(ol_grid_term(g, 2, 0, &t) == OL_OK);
    CHECK(std::abs(t.multiplicity) == 1);
    CHECK(ol_grid_term(g, 2, 5, &t) == OL_ERR_INVALID_ARGUMENT);
    ol_grid_destroy(g);
}

TEST_CASE("error codes and last error") {
    ol_algebra* a = nullptr;
    CHECK(ol_algebra_create("so", 3, &a) == OL_ERR_UNSUPPORTED);
    CHECK(std::strlen(ol_last_error()) > 0);
    REQUIRE(ol_algebra_create("su", 3, &a) == OL_OK);
    CHECK(std::strlen(ol_last_error()) == 0);
    ol_orbit* o = nullptr;
    const double singular[2] = {0.1, 0.05};
    CHECK(ol_orbit_create(a, singular, 2, "compact", 1, nullptr, nullptr, 0, &o) == OL_ERR_NOT_REGULAR);
    CHECK(ol_orbit_create(a, singular, 1, "compact", 1, nullptr, nullptr, 0, &o) == OL_ERR_INVALID_ARGUMENT);
    const double lam[2] = {0.1, 0.03};
    CHECK(ol_orbit_create(a, lam, 2, "maximally_split", 1, nullptr, nullptr, 0, &o) == OL_ERR_UNSUPPORTED);
    const char* labels[] = {"e"};
    const double values[] = {0.5};
    CHECK(ol_orbit_create(a, lam, 2, "user_supplied", 1, labels, values, 1, &o) == OL_ERR_INVALID_ARGUMENT);
    ol_algebra_destroy(a);
    CHECK(ol_evaluate(nullptr, nullptr, nullptr) == OL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("oracles through the C API") {
    Fixture f("su", "compact", 1);
    ol_calibration cal{};
    REQUIRE(ol_calibrate_constant(f.orbit, f.cartan(0.05).data(), 2, 100000, &cal) == OL_OK);
    CHECK(std::abs(cal.c - 4.0) < 5 * cal.c_stderr + 1e-3);
    ol_mc_estimate m1{}, m2{};
    REQUIRE(ol_mc_integral(f.orbit, f.cartan(0.4).data(), 6, 50000, cal.c, &m1) == OL_OK);
    REQUIRE(ol_mc_integral(f.orbit, f.cartan(0.4).data(), 6, 50000, cal.c, &m2) == OL_OK);
    CHECK(m1.re == m2.re);
    CHECK(m1.samples == 50000);

    Fixture s("sl", "maximally_split", 1);
    const double eps[3] = {0.1, 0.05, 0.025};
    ol_sign_calibration sc{};
    REQUIRE(ol_calibrate_sign(s.orbit, s.cartan(1.0).data(), eps, 3, 1.0, &sc) == OL_OK);
    CHECK(sc.s0 == -1);
    double out[3];
    REQUIRE(ol_damped_integral(s.orbit, s.cartan(1.0).data(), eps, 3, 1.0, out) == OL_OK);
    CHECK(out[2] == doctest::Approx(-0.6524).epsilon(1e-3));
}

TEST_CASE("verify report and cycle limit") {
    ol_verify_options opt;
    ol_verify_options_init(&opt);
    ol_report* r = nullptr;
    REQUIRE(ol_verify("algebra", &opt, &r) == OL_OK);
    CHECK(ol_report_size(r) > 5);
    CHECK(ol_report_passed(r) == 1);
    ol_check c{};
    REQUIRE(ol_report_check(r, 0, &c) == OL_OK);
    CHECK(std::strlen(c.name) > 0);
    ol_report_destroy(r);
    CHECK(ol_verify("nope", &opt, &r) == OL_ERR_INVALID_ARGUMENT);

    const double twist[8] = {1, 0, 0, 1, 0, 0.5, 0, 0};
    std::vector<double> s;
    for (int k = 0; k <= 12; ++k)
        s.push_back(std::ldexp(1.0, -k));
    std::vector<ol_scaling_row> rows(s.size());
    ol_scaling_summary sum{};
    REQUIRE(ol_cycle_limit(twist, 0.5, s.data(), s.size(), 100, 1, rows.data(), &sum) == OL_OK);
    CHECK(rows.back().s == s.back());
    CHECK(rows.back().imaginary_defect < rows.front().imaginary_defect);
    CHECK(sum.monotone == 1);
    const double bad[8] = {2, 0, 0, 2, 0, 0, 0, 0};
    CHECK(ol_cycle_limit(bad, 0.5, s.data(), s.size(), 10, 1, rows.data(), &sum) == OL_ERR_INVALID_ARGUMENT);
}
