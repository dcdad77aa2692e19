#include <cmath>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "core/oracle.hpp"
#include "core/rng.hpp"
#include "doctest.h"

using namespace orbitloc;

TEST_CASE("philox known-answer vectors") {
    using C = Philox4x32::Counter;
    CHECK(Philox4x32::block({0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
    PhiloxStream a(42, 0), b(42, 0);
    for (int k = 0; k < 100; ++k)
        CHECK(a.next_u32() == b.next_u32());
    PhiloxStream e(42, 0), f(42, 1), g(43, 0);
    int same_stream = 0, same_seed = 0;
    for (int k = 0; k < 64; ++k) {
        const auto x = e.next_u32();
        same_stream += x == f.next_u32();
        same_seed += x == g.next_u32();
    }
    CHECK(same_stream == 0);
    CHECK(same_seed == 0);
}

TEST_CASE("uniforms stay inside the open unit interval") {
    PhiloxStream r(7, 3);
    double lo = 1, hi = 0, sum = 0;
    for (int k = 0; k < 100000; ++k) {
        const double u = r.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

namespace {

double chi_square_p(const std::vector<int>& counts, double expected) {
    double stat = 0;
    for (int c : counts)
        stat += (c - expected) * (c - expected) / expected;
    boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

} // namespace

TEST_CASE("Haar columns are uniform on the sphere") {
    // |u_00|^2 ~ Beta(1, n-1): uniform for n = 2; arg u_00 uniform on the circle.
    constexpr int bins = 20, samples = 40000;
    PhiloxStream rng(2024, 5);
    std::vector<int> modulus(bins), phase(bins), beta3(bins);
    for (int k = 0; k < samples; ++k) {
        const CMatrix u = haar_unitary(rng, 2);
        const double m = std::norm(u(0, 0));
        modulus[std::min(bins - 1, static_cast<int>(m * bins))]++;
        const double a = (std::arg(u(0, 1)) + M_PI) / (2 * M_PI);
        phase[std::min(bins - 1, static_cast<int>(a * bins))]++;
        const CMatrix v = haar_unitary(rng, 3);
        // n = 3: P(|u|^2 <= t) = 1 - (1 - t)^2
        const double t = 1 - std::pow(1 - std::norm(v(1, 0)), 2);
        beta3[std::min(bins - 1, static_cast<int>(t * bins))]++;
    }
    CHECK(chi_square_p(modulus, double(samples) / bins) > 1e-3);
    CHECK(chi_square_p(phase, double(samples) / bins) > 1e-3);
    CHECK(chi_square_p(beta3, double(samples) / bins) > 1e-3);
}

TEST_CASE("Haar samples are unitary with unit determinant modulus") {
    PhiloxStream rng(1, 1);
    for (int n = 2; n <= 4; ++n) {
        const CMatrix u = haar_unitary(rng, n);
        CHECK((u.adjoint() * u - CMatrix::Identity(n, n)).norm() < 1e-13);
        CHECK(std::abs(std::abs(u.determinant()) - 1.0) < 1e-13);
    }
}
