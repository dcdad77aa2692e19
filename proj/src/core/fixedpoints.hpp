// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/cartan.hpp"

namespace orbitloc {

enum class MultiplicityMode { compact, maximally_split, user_supplied };

std::string to_string(MultiplicityMode m);
MultiplicityMode parse_mode(const std::string& name);

/// Zero of X_flag for X regular in the Cartan: the Borel t + sum of root spaces in borel_roots.
struct FixedPoint {
    WeylElement weyl;
    std::vector<Root> borel_roots; // w . Phi^-
    CVector lambda_x;              // w . lambda, diagonal coordinates of I^{-1}(lambda_x)
    bool in_closed_orbit = false;
    int multiplicity = 0;
};

/// All |W| fixed points ordered shortlex by Weyl label. The identity corresponds to
/// the Borel containing the Cartan and every negative root space.
/// `lambda` is the diagonal of I^{-1}(lambda) in the Cartan's coordinates.
std::vector<FixedPoint> enumerate_fixed_points(const CartanDatum& cartan, const CVector& lambda);

/// Throws not_regular unless alpha(lambda) is separated from 0 for every root.
void require_regular_lambda(const CVector& lambda);

struct PositiveSplit {
    std::vector<Root> negative_part; // Phi': Re alpha(X) < 0
    std::vector<Root> positive_part; // Phi'': Re alpha(X) > 0
};

/// Canonical Phi'/Phi'' split of a positive system by the sign of Re alpha(X).
/// Roots with Re alpha(X) = 0 go to neither subset.
PositiveSplit split_positive_system(const CVector& x_diagonal, const std::vector<Root>& positive);

/// True when both subsets obey the sign rule and are closed under addition inside `positive`.
bool satisfies_split_conditions(const CVector& x_diagonal, const std::vector<Root>& positive,
                                const PositiveSplit& split);

/// Compact form: every fixed point. Split form: fixed points whose Borel is stable
/// under complex conjugation with respect to g_R.
std::vector<bool> closed_orbit_support(const CartanDatum& cartan, const std::vector<FixedPoint>& points);

struct MultiplicityAssignment {
    MultiplicityMode mode = MultiplicityMode::compact;
    std::map<std::string, int> values;
    int global_sign = 1; // s0, used in maximally_split mode
};

/// compact: all 1. maximally_split: sign(w) * s0 on the closed orbit.
/// user_supplied: integer values from `user` (unknown labels or non-integers are errors).
/// Off the closed orbit every mode yields 0. Writes the result back into `points`.
MultiplicityAssignment assign_multiplicities(std::vector<FixedPoint>& points, MultiplicityMode mode,
                                             int s0 = 1, const std::map<std::string, double>& user = {});

} // namespace orbitloc
