// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/geometry_sl2.hpp"
#include "core/localize.hpp"
#include "core/oracle.hpp"

namespace orbitloc {

struct Check {
    std::string name;
    double measured = 0;
    double threshold = 0;
    bool passed = false;
    std::string detail;
};

struct Report {
    std::string suite;
    std::vector<Check> checks;
    bool passed() const;
    void append(const Report& other);
};

struct VerifyOptions {
    Family family = Family::su;
    int n = 2;
    Vector lambda;            // empty: a built-in regular lambda
    int s0 = -1;              // split-mode sign
    std::uint64_t seed = 1;
    std::uint64_t samples = 200000;
    int points = 20;
    std::vector<double> eps{0.1, 0.05, 0.025};
    CMatrix twist;            // empty: complex shear [[1, i/2], [0, 1]]
};

/// Suites: algebra, fixedpoints, localize, geometry, oracle, all.
Report run_suite(const std::string& suite, const VerifyOptions& opt);
const std::vector<std::string>& suite_names();

// Individual property checks, shared by the suites and the acceptance run.

/// Random regular element of g_R conjugate into the standard Cartan, with diagonal
/// gaps at least `gap` and entries bounded by `radius`. For sl(n,R), `spread` scales
/// the random conjugation and so the departure from normality.
AlgebraElement random_regular_element(PhiloxStream& rng, const AlgebraSpec& alg, double radius, double gap,
                                      double spread = 0.4);
/// Elliptic regular element of sl(n,R) (some eigenvalues non-real).
AlgebraElement random_elliptic_element(PhiloxStream& rng, const AlgebraSpec& alg);
/// Product of exponentials of random basis elements.
CMatrix random_group_element(PhiloxStream& rng, const AlgebraSpec& alg, int factors = 3, double scale = 0.5);

Vector default_lambda(Family family, int n);

Check check_mc_agreement(const OrbitSpec& spec, std::uint64_t seed, std::uint64_t n, int points, int allowed_misses);
Check check_casimir(const OrbitSpec& spec, std::uint64_t seed, int points, double h, double tol);
Check check_ad_invariance(const OrbitSpec& spec, std::uint64_t seed, int points, double tol);
Check check_weyl_invariance(const OrbitSpec& spec, std::uint64_t seed, int points, double tol);
Check check_elliptic_vanishing(const OrbitSpec& spec, std::uint64_t seed, int points);
Check check_split_reality(const OrbitSpec& spec, std::uint64_t seed, int points, double tol);
Check check_compact_multiplicities(const OrbitSpec& spec);
Check check_compact_limit(const OrbitSpec& spec, int kmax, double tol);
Report geometry_checks(const Sl2Model& model, const CVector& ell, std::uint64_t seed, std::size_t samples);

} // namespace orbitloc
