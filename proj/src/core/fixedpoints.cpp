// SPDX-License-Identifier: Apache-2.0
#include "core/fixedpoints.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace orbitloc {

std::string to_string(MultiplicityMode m) {
    switch (m) {
    case MultiplicityMode::compact: return "compact";
    case MultiplicityMode::maximally_split: return "maximally_split";
    case MultiplicityMode::user_supplied: return "user_supplied";
    }
    return "unknown";
}

MultiplicityMode parse_mode(const std::string& name) {
    if (name == "compact")
        return MultiplicityMode::compact;
    if (name == "maximally_split" || name == "split")
        return MultiplicityMode::maximally_split;
    if (name == "user_supplied" || name == "user")
        return MultiplicityMode::user_supplied;
    fail(ErrorCode::invalid_argument, "unknown multiplicity mode '" + name + "'");
}

void require_regular_lambda(const CVector& lambda) {
    const double scale = lambda.cwiseAbs().maxCoeff();
    if (scale == 0.0)
        fail(ErrorCode::not_regular, "lambda is zero");
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
        for (Eigen::Index j = i + 1; j < lambda.size(); ++j)
            if (std::abs(lambda(i) - lambda(j)) < kRegularTolerance * scale)
                fail(ErrorCode::not_regular, "lambda is singular: a root vanishes on it");
}

std::vector<FixedPoint> enumerate_fixed_points(const CartanDatum& cartan, const CVector& lambda) {
    require_regular_lambda(lambda);
    const std::vector<Root> negative = cartan.negative();
    std::vector<FixedPoint> out;
    for (const auto& w : cartan.weyl.elements()) {
        FixedPoint fp;
        fp.weyl = w;
        for (const auto& r : negative)
            fp.borel_roots.push_back(w.apply(r));
        fp.lambda_x = w.apply(lambda);
        out.push_back(std::move(fp));
    }
    return out;
}

PositiveSplit split_positive_system(const CVector& x, const std::vector<Root>& positive) {
    const double tol = 1e-12 * std::max(1e-300, x.cwiseAbs().maxCoeff());
    PositiveSplit s;
    for (const auto& r : positive) {
        const double re = r(x).real();
        if (re < -tol)
            s.negative_part.push_back(r);
        else if (re > tol)
            s.positive_part.push_back(r);
    }
    return s;
}

namespace {

// alpha + beta as a root of type A, if it is one: (e_i - e_j) + (e_j - e_k) = e_i - e_k
std::optional<Root> root_sum(const Root& a, const Root& b) {
    if (a.j == b.i && a.i != b.j)
        return Root{a.i, b.j};
    if (b.j == a.i && b.i != a.j)
        return Root{b.i, a.j};
    return std::nullopt;
}

bool closed(const std::vector<Root>& subset, const std::vector<Root>& ambient) {
    std::set<Root> in(subset.begin(), subset.end());
    std::set<Root> amb(ambient.begin(), ambient.end());
    for (const auto& a : subset)
        for (const auto& b : subset)
            if (auto s = root_sum(a, b); s && amb.count(*s) && !in.count(*s))
                return false;
    return true;
}

} // namespace

bool satisfies_split_conditions(const CVector& x, const std::vector<Root>& positive, const PositiveSplit& split) {
    std::set<Root> neg(split.negative_part.begin(), split.negative_part.end());
    std::set<Root> pos(split.positive_part.begin(), split.positive_part.end());
    for (const auto& r : positive) {
        const double re = r(x).real();
        if (re != 0.0) {
            if ((re < 0) != (neg.count(r) == 1))
                return false;
            if ((re > 0) != (pos.count(r) == 1))
                return false;
        }
    }
    return closed(split.negative_part, positive) && closed(split.positive_part, positive);
}

std::vector<bool> closed_orbit_support(const CartanDatum& cartan, const std::vector<FixedPoint>& points) {
    const AlgebraSpec& alg = *cartan.algebra;
    std::vector<bool> flags(points.size(), true);
    if (alg.family() == Family::su)
        return flags;

    const CMatrix& p = cartan.conj;
    const CMatrix& pinv = cartan.conj_inv;
    for (size_t k = 0; k < points.size(); ++k) {
        // sigma-stability of b = t + sum g^alpha: sigma maps each spanning vector back into b
        std::vector<CMatrix> span;
        for (const auto& h : cartan.basis)
            span.push_back(alg.to_matrix(h));
        for (const auto& r : points[k].borel_roots) {
            CMatrix e = CMatrix::Zero(alg.matrix_size(), alg.matrix_size());
            e(r.i, r.j) = 1.0;
            span.push_back(p * e * pinv);
        }
        const Eigen::Index nn = alg.matrix_size() * alg.matrix_size();
        CMatrix basis(nn, static_cast<Eigen::Index>(span.size()));
        for (size_t c = 0; c < span.size(); ++c)
            basis.col(static_cast<Eigen::Index>(c)) = Eigen::Map<const CVector>(span[c].data(), nn);
        Eigen::ColPivHouseholderQR<CMatrix> qr(basis);
        bool stable = true;
        for (const auto& m : span) {
            const CMatrix s = alg.real_structure(m);
            const CVector v = Eigen::Map<const CVector>(s.data(), nn);
            const CVector fit = basis * qr.solve(v);
            if ((fit - v).norm() > 1e-9 * std::max(1.0, v.norm())) {
                stable = false;
                break;
            }
        }
        flags[k] = stable;
    }
    return flags;
}

MultiplicityAssignment assign_multiplicities(std::vector<FixedPoint>& points, MultiplicityMode mode, int s0,
                                             const std::map<std::string, double>& user) {
    if (s0 != 1 && s0 != -1)
        fail(ErrorCode::invalid_argument, "global sign s0 must be +1 or -1");
    MultiplicityAssignment out;
    out.mode = mode;
    out.global_sign = s0;

    if (mode == MultiplicityMode::user_supplied) {
        for (const auto& [label, value] : user) {
            const bool known = std::any_of(points.begin(), points.end(),
                                           [&](const FixedPoint& p) { return p.weyl.label == label; });
            if (!known)
                fail(ErrorCode::invalid_argument, "unknown Weyl label '" + label + "' in user multiplicities");
            if (!std::isfinite(value) || value != std::round(value))
                fail(ErrorCode::invalid_argument, "multiplicity for '" + label + "' is not an integer");
        }
    }

    for (auto& p : points) {
        int d = 0;
        if (p.in_closed_orbit) {
            switch (mode) {
            case MultiplicityMode::compact: d = 1; break;
            case MultiplicityMode::maximally_split: d = p.weyl.sign * s0; break;
            case MultiplicityMode::user_supplied: {
                auto it = user.find(p.weyl.label);
                d = it == user.end() ? 0 : static_cast<int>(std::lround(it->second));
                break;
            }
            }
        }
        p.multiplicity = d;
        out.values[p.weyl.label] = d;
    }
    return out;
}

} // namespace orbitloc
