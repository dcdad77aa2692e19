// SPDX-License-Identifier: Apache-2.0
#include "core/localize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "core/parallel.hpp"

namespace orbitloc {

namespace {

// Real diagonal d of lambda' = diag(d) (sl) or i diag(d) (su), and back.
Vector real_diagonal(const AlgebraSpec& alg, const CVector& ell) {
    return alg.family() == Family::sl_real ? Vector(ell.imag()) : Vector(-ell.real());
}

Vector cartan_coords_of(const Vector& d) {
    // H_k = E_kk - E_{k+1,k+1}: diag(d) = sum c_k H_k with c_m = d_1 + ... + d_m
    Vector c(d.size() - 1);
    double acc = 0;
    for (Eigen::Index m = 0; m + 1 < d.size(); ++m) {
        acc += d(m);
        c(m) = acc;
    }
    return c;
}

} // namespace

OrbitSpec OrbitSpec::make(const AlgebraPtr& algebra, const Vector& lambda_coords, MultiplicityMode mode, int s0,
                          const std::map<std::string, double>& user) {
    const AlgebraSpec& alg = *algebra;
    if (lambda_coords.size() != alg.rank())
        fail(ErrorCode::invalid_argument, "lambda needs " + std::to_string(alg.rank()) + " Cartan coordinates, got " +
                                              std::to_string(lambda_coords.size()));
    if (!lambda_coords.allFinite())
        fail(ErrorCode::invalid_argument, "lambda has non-finite coordinates");
    if (mode == MultiplicityMode::compact && alg.family() != Family::su)
        fail(ErrorCode::unsupported, "compact multiplicities need a compact real form (su)");
    if (mode == MultiplicityMode::maximally_split && alg.family() != Family::sl_real)
        fail(ErrorCode::unsupported, "maximally split multiplicities need a split real form (sl)");

    OrbitSpec spec;
    spec.algebra = algebra;
    spec.cartan = standard_cartan(algebra);
    spec.lambda_coords = lambda_coords;
    spec.mode = mode;
    spec.s0 = s0;

    // lambda = i lambda', so I^{-1}(lambda) = i * Lambda'. Sorting the real
    // diagonal descending fixes the positive system lambda is dominant for.
    const CVector raw = alg.to_matrix(alg.cartan_element(lambda_coords)).diagonal();
    const Vector d = alg.family() == Family::sl_real ? Vector(raw.real()) : Vector(raw.imag());
    std::vector<int> order(static_cast<size_t>(d.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d(a) > d(b); });
    spec.ell.resize(d.size());
    for (Eigen::Index k = 0; k < d.size(); ++k)
        spec.ell(k) = Complex(0, 1) * raw(order[static_cast<size_t>(k)]);

    spec.points = enumerate_fixed_points(spec.cartan, spec.ell);
    const auto support = closed_orbit_support(spec.cartan, spec.points);
    for (size_t k = 0; k < support.size(); ++k)
        spec.points[k].in_closed_orbit = support[k];
    spec.multiplicities = assign_multiplicities(spec.points, mode, s0, user);
    return spec;
}

Complex OrbitSpec::p2() const {
    return algebra->trace_scale() * ell.cwiseProduct(ell).sum();
}

EvalResult evaluate(const OrbitSpec& spec, const AlgebraElement& x) {
    const AlgebraSpec& alg = *spec.algebra;
    if (x.size() != alg.dimension())
        fail(ErrorCode::invalid_argument, "X has " + std::to_string(x.size()) + " coordinates, expected " +
                                              std::to_string(alg.dimension()));
    if (x.field != Field::real || !x.coords.allFinite())
        fail(ErrorCode::invalid_argument, "X must be a finite element of the real form");
    if (!alg.is_regular_semisimple(x))
        fail(ErrorCode::not_regular, "X is not regular semisimple");

    EvalResult out;
    const auto red = reduce_to_cartan(spec.algebra, x, spec.cartan);
    if (!red) {
        // not G_R-conjugate into the split Cartan: no fixed point lies on the closed orbit
        out.support_empty = true;
        out.value = 0.0;
        return out;
    }
    CVector diag = red->diagonal;
    diag.array() -= diag.mean();
    out.reduced = diag;

    double wall = std::numeric_limits<double>::infinity();
    for (const auto& r : spec.cartan.positive)
        wall = std::min(wall, std::abs(r(diag)));
    if (wall < kWallTolerance) {
        out.degenerate = true;
        out.value = Complex(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN());
        return out;
    }

    const double kappa = alg.trace_scale();
    Complex total = 0.0;
    for (const auto& p : spec.points) {
        Term t;
        t.label = p.weyl.label;
        t.exponent = kappa * diag.cwiseProduct(p.lambda_x).sum();
        t.denominator = 1.0;
        for (const auto& r : p.borel_roots)
            t.denominator *= r(diag);
        t.multiplicity = p.multiplicity;
        t.value = t.multiplicity == 0 ? Complex(0.0) : Complex(t.multiplicity) * std::exp(t.exponent) / t.denominator;
        total += t.value;
        out.terms.push_back(std::move(t));
    }
    out.value = total;
    return out;
}

EvalResult fourier_value(const OrbitSpec& spec, const AlgebraElement& x) {
    EvalResult r = evaluate(spec, x);
    if (r.degenerate)
        fail(ErrorCode::degenerate, "X lies within " + std::to_string(kWallTolerance) + " of a root hyperplane");
    return r;
}

std::vector<GridRow> fourier_grid(const OrbitSpec& spec, const std::vector<AlgebraElement>& samples) {
    std::vector<GridRow> rows(samples.size());
    parallel_for(samples.size(), [&](size_t i) {
        try {
            rows[i].result = evaluate(spec, samples[i]);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::invalid_argument)
                throw;
            rows[i].result.degenerate = true;
            rows[i].result.value = Complex(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN());
            rows[i].error = e.what();
        }
    });
    return rows;
}

void orthonormal_killing_basis(const AlgebraSpec& algebra, Matrix& basis, Vector& eta) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(algebra.killing_matrix());
    const Vector& mu = es.eigenvalues();
    basis = es.eigenvectors();
    eta.resize(mu.size());
    for (Eigen::Index k = 0; k < mu.size(); ++k) {
        basis.col(k) /= std::sqrt(std::abs(mu(k)));
        eta(k) = mu(k) > 0 ? 1.0 : -1.0;
    }
}

CasimirResult casimir_check(const OrbitSpec& spec, const AlgebraElement& x, double h) {
    if (!(h > 0))
        fail(ErrorCode::invalid_argument, "finite-difference step must be positive");
    const AlgebraSpec& alg = *spec.algebra;
    const EvalResult center = fourier_value(spec, x);
    if (center.support_empty)
        fail(ErrorCode::invalid_argument, "Casimir check needs X in the support of F");
    double wall = std::numeric_limits<double>::infinity();
    for (const auto& r : spec.cartan.positive)
        wall = std::min(wall, std::abs(r(center.reduced)));
    if (wall < 10 * h)
        fail(ErrorCode::degenerate, "X is closer than 10h to a root hyperplane");

    Matrix basis;
    Vector eta;
    orthonormal_killing_basis(alg, basis, eta);
    const Vector x0 = x.real_coords();
    Complex lap = 0.0;
    for (Eigen::Index k = 0; k < basis.cols(); ++k) {
        const Complex fp = fourier_value(spec, AlgebraElement::real(x0 + h * basis.col(k))).value;
        const Complex fm = fourier_value(spec, AlgebraElement::real(x0 - h * basis.col(k))).value;
        lap += eta(k) * (fp - 2.0 * center.value + fm) / (h * h);
    }

    CasimirResult out;
    out.laplacian = lap;
    out.value = center.value;
    out.eigenvalue = spec.p2();
    const double abs_res = std::abs(lap - out.eigenvalue * center.value);
    out.relative = std::abs(center.value) >= 1e-12;
    out.residual = out.relative ? abs_res / std::abs(center.value) : abs_res;
    return out;
}

AlgebraElement adjoint_action(const AlgebraSpec& algebra, const CMatrix& g, const AlgebraElement& x) {
    const CMatrix m = g * algebra.to_matrix(x) * g.inverse();
    return algebra.from_matrix(m, x.field);
}

InvarianceResult invariance_checks(const OrbitSpec& spec, const AlgebraElement& x, const CMatrix& g) {
    const AlgebraSpec& alg = *spec.algebra;
    InvarianceResult out;
    const EvalResult base = fourier_value(spec, x);
    try {
        const EvalResult moved = fourier_value(spec, adjoint_action(alg, g, x));
        out.ad_difference = std::abs(moved.value - base.value);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::invalid_argument)
            throw;
        out.flagged = true;
    }

    if (spec.mode == MultiplicityMode::compact) {
        const Vector d = real_diagonal(alg, spec.ell);
        for (const auto& w : spec.cartan.weyl.elements()) {
            const Vector wd = w.apply(d.cast<Complex>()).real();
            const OrbitSpec other = OrbitSpec::make(spec.algebra, cartan_coords_of(wd), spec.mode, spec.s0);
            out.weyl_difference = std::max(out.weyl_difference, std::abs(fourier_value(other, x).value - base.value));
        }
    }
    return out;
}

} // namespace orbitloc
