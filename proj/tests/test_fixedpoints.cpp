#include "core/localize.hpp"
#include "doctest.h"

using namespace orbitloc;

namespace {

OrbitSpec orbit(Family f, int n, std::vector<double> lambda, MultiplicityMode mode, int s0 = 1,
                const std::map<std::string, double>& user = {}) {
    return OrbitSpec::make(AlgebraSpec::build(f, n), Eigen::Map<Vector>(lambda.data(), static_cast<Eigen::Index>(lambda.size())),
                           mode, s0, user);
}

} // namespace

TEST_CASE("one fixed point per Weyl element") {
    const OrbitSpec s = orbit(Family::su, 3, {0.5, 0.2}, MultiplicityMode::compact);
    REQUIRE(s.points.size() == 6);
    CHECK(s.points[0].weyl.label == "e");
    CHECK(s.points[0].borel_roots == s.cartan.negative());
    for (const auto& p : s.points)
        CHECK(p.multiplicity == 1);
}

TEST_CASE("split multiplicities alternate with the Weyl sign") {
    const OrbitSpec s = orbit(Family::sl_real, 3, {0.5, 0.2}, MultiplicityMode::maximally_split, -1);
    for (const auto& p : s.points)
        CHECK(p.multiplicity == -p.weyl.sign);
}

TEST_CASE("mode and family must match") {
    CHECK_THROWS_AS(orbit(Family::sl_real, 2, {0.5}, MultiplicityMode::compact), Error);
    CHECK_THROWS_AS(orbit(Family::su, 2, {0.5}, MultiplicityMode::maximally_split), Error);
}

TEST_CASE("user multiplicities are validated") {
    const OrbitSpec s = orbit(Family::su, 2, {0.5}, MultiplicityMode::user_supplied, 1, {{"e", 2}, {"s1", -1}});
    CHECK(s.points[0].multiplicity == 2);
    CHECK(s.points[1].multiplicity == -1);
    CHECK_THROWS_AS(orbit(Family::su, 2, {0.5}, MultiplicityMode::user_supplied, 1, {{"s7", 1}}), Error);
    CHECK_THROWS_AS(orbit(Family::su, 2, {0.5}, MultiplicityMode::user_supplied, 1, {{"e", 0.5}}), Error);
    CHECK_THROWS_AS(orbit(Family::sl_real, 2, {0.5}, MultiplicityMode::maximally_split, 0), Error);
}

TEST_CASE("singular lambda is rejected") {
    CHECK_THROWS_AS(orbit(Family::su, 3, {0.1, 0.05}, MultiplicityMode::compact), Error);
    CHECK_THROWS_AS(orbit(Family::su, 2, {0.0}, MultiplicityMode::compact), Error);
}

TEST_CASE("positive-system split by the sign of Re alpha(X)") {
    const CartanDatum cd = standard_cartan(AlgebraSpec::build(Family::sl_real, 3));
    CVector x(3);
    x << 0.2, 1.0, -1.2;
    const PositiveSplit ps = split_positive_system(x, cd.positive);
    // e1 - e2 < 0, e1 - e3 > 0, e2 - e3 > 0
    CHECK(ps.negative_part == std::vector<Root>{{0, 1}});
    CHECK(ps.positive_part == std::vector<Root>{{0, 2}, {1, 2}});
    CHECK(satisfies_split_conditions(x, cd.positive, ps));
    PositiveSplit broken = ps;
    broken.positive_part.pop_back();
    CHECK_FALSE(satisfies_split_conditions(x, cd.positive, broken));
}
