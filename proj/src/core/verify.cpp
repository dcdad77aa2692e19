// SPDX-License-Identifier: Apache-2.0
#include "core/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "core/iwasawa.hpp"

namespace orbitloc {

bool Report::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void Report::append(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

namespace {

Check upper(std::string name, double measured, double threshold, std::string detail = {}) {
    return {std::move(name), measured, threshold, measured <= threshold, std::move(detail)};
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

double uniform(PhiloxStream& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

// Traceless real diagonal with entries in [-radius, radius] and pairwise gaps >= gap.
Vector random_diagonal(PhiloxStream& rng, int n, double radius, double gap) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Vector y(n);
        for (int k = 0; k < n; ++k)
            y(k) = uniform(rng, -radius, radius);
        y.array() -= y.mean();
        bool ok = y.cwiseAbs().maxCoeff() <= radius;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j)
                ok = std::abs(y(i) - y(j)) >= gap;
        if (ok)
            return y;
    }
    fail(ErrorCode::invalid_argument, "cannot place a regular diagonal with the requested gap inside the radius");
}

} // namespace

Vector default_lambda(Family, int n) {
    Vector d(n);
    for (int k = 0; k < n; ++k)
        d(k) = 0.5 * (n - 1 - 2 * k) / (n - 1);
    Vector c(n - 1);
    double acc = 0;
    for (int k = 0; k + 1 < n; ++k)
        c(k) = acc += d(k);
    return c;
}

CMatrix random_group_element(PhiloxStream& rng, const AlgebraSpec& alg, int factors, double scale) {
    const int n = alg.matrix_size();
    CMatrix g = CMatrix::Identity(n, n);
    for (int f = 0; f < factors; ++f) {
        const int k = static_cast<int>(rng.next_u32() % static_cast<std::uint32_t>(alg.dimension()));
        const double t = scale * rng.normal_pair()[0];
        const CMatrix step = (t * alg.basis_matrix(k)).exp();
        g = g * step;
    }
    return g;
}

AlgebraElement random_regular_element(PhiloxStream& rng, const AlgebraSpec& alg, double radius, double gap,
                                      double spread) {
    const int n = alg.matrix_size();
    const Vector y = random_diagonal(rng, n, radius, gap);
    CMatrix m;
    if (alg.family() == Family::su) {
        const CMatrix u = haar_unitary(rng, n);
        m = u * (Complex(0, 1) * y.cast<Complex>()).asDiagonal() * u.adjoint();
    } else {
        const CMatrix g = random_group_element(rng, alg, 2, spread);
        m = g * y.cast<Complex>().asDiagonal() * g.inverse();
    }
    return alg.from_matrix(m, Field::real);
}

AlgebraElement random_elliptic_element(PhiloxStream& rng, const AlgebraSpec& alg) {
    if (alg.family() != Family::sl_real)
        fail(ErrorCode::unsupported, "elliptic elements are drawn in sl(n,R)");
    const int n = alg.matrix_size();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Matrix y = Matrix::Zero(n, n);
        const double b = uniform(rng, 0.2, 1.5);
        y(0, 1) = b;
        y(1, 0) = -b;
        for (int k = 2; k < n; ++k)
            y(k, k) = uniform(rng, -1.5, 1.5);
        const double tr = y.trace();
        y(0, 0) -= tr / 2;
        y(1, 1) -= tr / 2;
        const CMatrix g = random_group_element(rng, alg, 2, 0.4);
        const AlgebraElement x = alg.from_matrix(g * y.cast<Complex>() * g.inverse(), Field::real);
        try {
            if (alg.is_regular_semisimple(x))
                return x;
        } catch (const Error&) {
        }
    }
    fail(ErrorCode::invalid_argument, "failed to draw a regular elliptic element");
}

Check check_mc_agreement(const OrbitSpec& spec, std::uint64_t seed, std::uint64_t n, int points, int allowed_misses) {
    const AlgebraSpec& alg = *spec.algebra;
    const int m = alg.matrix_size();
    // reference point near 0, where the Haar average is far from zero
    Vector y0(m);
    for (int k = 0; k < m; ++k)
        y0(k) = 0.04 * (m - 1 - 2 * k) / (m - 1);
    const AlgebraElement x0 = alg.from_matrix((Complex(0, 1) * y0.cast<Complex>()).asDiagonal(), Field::real);
    const Calibration cal = calibrate_constant(spec, x0, seed, n);

    PhiloxStream rng(seed, 7);
    int misses = 0;
    double worst = 0;
    for (int k = 0; k < points; ++k) {
        const AlgebraElement x = random_regular_element(rng, alg, 1.0, 0.05);
        const Complex f = fourier_value(spec, x).value;
        const McEstimate mc = mc_fourier_integral(spec, x, seed + 1 + static_cast<std::uint64_t>(k), n, cal.c);
        const double se = std::hypot(mc.std_error, std::abs(mc.mean / cal.c) * cal.c_stderr);
        const double z = std::abs(mc.mean - f) / se;
        worst = std::max(worst, z);
        if (z > 3)
            ++misses;
    }
    return upper("oracle agreement misses (" + to_string(alg.family()) + std::to_string(m) + ")", misses,
                 allowed_misses,
                 "c=" + fmt(cal.c) + " +- " + fmt(cal.c_stderr) + ", worst |mc-F|/se=" + fmt(worst) + ", N=" +
                     std::to_string(n) + ", points=" + std::to_string(points));
}

Check check_casimir(const OrbitSpec& spec, std::uint64_t seed, int points, double h, double tol) {
    const AlgebraSpec& alg = *spec.algebra;
    const int n = alg.matrix_size();
    const bool compact = alg.family() == Family::su;
    // F is a signed sum of |W| phases over the root product. Near the origin the terms cancel and
    // the stencil amplifies both rounding and the per-term truncation (h / gap)^2 by sum|term| / |F|.
    // Eigenvalue spacing times ell spacing near 2 pi / n keeps the terms spread like a DFT, points with
    // |F| < 0.05 sum|term| are redrawn, and the step is h times the smallest root value at the point.
    const double phase = alg.trace_scale() * spec.ell.cwiseAbs().maxCoeff();
    const double radius = std::numbers::pi * (n - 1) * (n - 1) / (2.0 * n) / phase;
    const double min_gap = 0.6 * radius / (n - 1);
    const double spread = compact ? 0.4 : 0.15;
    PhiloxStream rng(seed, 11);
    double worst = 0;
    int absolute = 0, redrawn = 0;
    for (int k = 0; k < points; ++k) {
        AlgebraElement x = random_regular_element(rng, alg, radius, min_gap, spread);
        for (int attempt = 0;; ++attempt) {
            const EvalResult r = fourier_value(spec, x);
            double mass = 0;
            for (const auto& t : r.terms)
                mass += std::abs(t.value);
            if (std::abs(r.value) >= 0.05 * mass)
                break;
            if (attempt == 10000)
                fail(ErrorCode::invalid_argument, "no sample point away from the zeros of F");
            ++redrawn;
            x = random_regular_element(rng, alg, radius, min_gap, spread);
        }
        const CVector mu = alg.spectrum(x).eigenvalues;
        double root_min = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                root_min = std::min(root_min, std::abs(mu(i) - mu(j)));
        const CasimirResult r = casimir_check(spec, x, h * root_min);
        worst = std::max(worst, r.residual);
        absolute += r.relative ? 0 : 1;
    }
    return upper("casimir relative residual (" + to_string(alg.family()) + std::to_string(n) + ")", worst, tol,
                 "h/gap=" + fmt(h) + ", points=" + std::to_string(points) + ", absolute-only=" +
                     std::to_string(absolute) + ", redrawn=" + std::to_string(redrawn));
}

// absolute tolerances: keep the root product, hence |F|, of order one as n grows
namespace {
double invariance_gap(const AlgebraSpec& alg) { return std::max(0.05, 0.15 * (alg.matrix_size() - 3)); }
} // namespace

Check check_ad_invariance(const OrbitSpec& spec, std::uint64_t seed, int points, double tol) {
    const AlgebraSpec& alg = *spec.algebra;
    PhiloxStream rng(seed, 13);
    double worst = 0;
    int flagged = 0;
    for (int k = 0; k < points; ++k) {
        const AlgebraElement x = random_regular_element(rng, alg, 1.5, invariance_gap(alg));
        const CMatrix g = random_group_element(rng, alg);
        const InvarianceResult r = invariance_checks(spec, x, g);
        worst = std::max(worst, r.ad_difference);
        flagged += r.flagged ? 1 : 0;
    }
    Check c = upper("Ad-invariance |F(Ad(g)X) - F(X)| (" + to_string(alg.family()) + std::to_string(alg.matrix_size()) + ")",
                    worst, tol, "points=" + std::to_string(points) + ", flagged=" + std::to_string(flagged));
    c.passed = c.passed && flagged == 0;
    return c;
}

Check check_weyl_invariance(const OrbitSpec& spec, std::uint64_t seed, int points, double tol) {
    const AlgebraSpec& alg = *spec.algebra;
    PhiloxStream rng(seed, 17);
    double worst = 0;
    for (int k = 0; k < points; ++k) {
        const AlgebraElement x = random_regular_element(rng, alg, 1.5, invariance_gap(alg));
        worst = std::max(worst, invariance_checks(spec, x, CMatrix::Identity(alg.matrix_size(), alg.matrix_size())).weyl_difference);
    }
    return upper("Weyl relabeling |F_wl - F_l|", worst, tol, "points=" + std::to_string(points));
}

Check check_elliptic_vanishing(const OrbitSpec& spec, std::uint64_t seed, int points) {
    const AlgebraSpec& alg = *spec.algebra;
    PhiloxStream rng(seed, 19);
    double worst = 0;
    int structural = 0;
    for (int k = 0; k < points; ++k) {
        const EvalResult r = fourier_value(spec, random_elliptic_element(rng, alg));
        worst = std::max(worst, std::abs(r.value));
        structural += r.support_empty ? 1 : 0;
    }
    Check c = upper("elliptic vanishing max |F|", worst, 0.0,
                    "points=" + std::to_string(points) + ", empty-support=" + std::to_string(structural));
    c.passed = c.passed && structural == points;
    return c;
}

Check check_split_reality(const OrbitSpec& spec, std::uint64_t seed, int points, double tol) {
    const AlgebraSpec& alg = *spec.algebra;
    PhiloxStream rng(seed, 23);
    double worst = 0, form = 0;
    bool shape = true;
    for (int k = 0; k < points; ++k) {
        const EvalResult r = fourier_value(spec, random_regular_element(rng, alg, 1.5, 0.05));
        worst = std::max(worst, std::abs(r.value.imag()));
        // d_e e^z / D + d_s e^{-z} / (-D) = 2 d_e cos(Im z) / D with z imaginary and d_s = -d_e
        if (r.terms.size() != 2) {
            shape = false;
            continue;
        }
        const Term& e = r.terms[0];
        const Term& s = r.terms[1];
        shape = shape && e.exponent.real() == 0.0 && std::abs(s.exponent + e.exponent) <= 1e-12 * std::abs(e.exponent) &&
                std::abs(e.multiplicity) == 1 && s.multiplicity == -e.multiplicity;
        shape = shape && std::abs(s.denominator + e.denominator) <= 1e-12 * std::abs(e.denominator);
        const Complex two = double(e.multiplicity) * 2.0 * std::cos(e.exponent.imag()) / e.denominator;
        form = std::max(form, std::abs(two - r.value) / std::max(1.0, std::abs(r.value)));
    }
    Check c = upper("split reality max |Im F|", worst, tol,
                    "points=" + std::to_string(points) + ", two-exponential residual=" + fmt(form));
    c.passed = c.passed && shape && form <= 1e-12;
    return c;
}

Check check_compact_multiplicities(const OrbitSpec& spec) {
    int bad = 0;
    for (const auto& p : spec.points)
        bad += p.multiplicity == 1 ? 0 : 1;
    return upper("compact multiplicities differing from 1", bad, 0, "fixed points=" + std::to_string(spec.points.size()));
}

Check check_compact_limit(const OrbitSpec& spec, int kmax, double tol) {
    const AlgebraSpec& alg = *spec.algebra;
    Vector dir = Vector::Zero(alg.rank());
    dir(0) = 1.0;
    std::vector<Complex> f;
    for (int k = 0; k <= kmax; ++k)
        f.push_back(fourier_value(spec, alg.cartan_element(std::ldexp(1.0, -k) * dir)).value);
    double biggest = 0, tail = 0;
    bool finite = true;
    for (size_t k = 0; k < f.size(); ++k) {
        finite = finite && std::isfinite(f[k].real()) && std::isfinite(f[k].imag());
        biggest = std::max(biggest, std::abs(f[k]));
        if (k + 1 < f.size() && 4 * k >= 3 * (f.size() - 1))
            tail = std::max(tail, std::abs(f[k + 1] - f[k]));
    }
    const bool bounded = finite && biggest <= 2 * std::max(std::abs(f.front()), std::abs(f.back()));
    Check c = upper("compact limit X -> 0 relative tail Cauchy gap", tail / std::max(1.0, biggest), tol,
                    "k<=" + std::to_string(kmax) + ", max |F|=" + fmt(biggest) + ", F(2^-k)=" + fmt(f.back().real()));
    c.passed = c.passed && bounded;
    return c;
}

Report geometry_checks(const Sl2Model& model, const CVector& ell, std::uint64_t seed, std::size_t samples) {
    Report rep;
    rep.suite = "geometry";
    PhiloxStream rng(seed, 29);

    double nil = 0, lin = 0, eq = 0, rt = 0, inv = 0, zero = 0;
    const Complex det0 = ell(0) * ell(1);
    for (int i = 0; i < 1000; ++i) {
        const FlagPoint x = random_flag_point(rng);
        const auto e = rng.normal_pair();
        const CotangentPoint zeta{x, 3.0 * Complex(e[0], e[1])};
        const CMatrix mu = model.moment(zeta);
        nil = std::max({nil, std::abs(mu.trace()), std::abs(mu.determinant())});
        lin = std::max(lin, (model.moment({x, 2.5 * zeta.eta}) - 2.5 * mu).norm());

        const CMatrix u = model.compact_element(rng);
        eq = std::max(eq, (model.lambda_at(Sl2Model::act(u, x), ell) - u * model.lambda_at(x, ell) * u.inverse()).norm());

        const CMatrix y = model.twisted_moment(zeta, ell);
        inv = std::max({inv, std::abs(y.trace()), std::abs(y.determinant() - det0)});
        const CotangentPoint back = model.twisted_moment_inverse(y, ell);
        rt = std::max(rt, std::abs(back.base.z0 - x.z0) + std::abs(back.base.z1 - x.z1) +
                              std::abs(back.component(x.chart) - zeta.eta));
        zero = std::max(zero, (model.twisted_moment({x, 0.0}, ell) - model.lambda_at(x, ell)).norm());
    }
    rep.checks.push_back(upper("moment map nilpotent (trace, det)", nil, 1e-10));
    rep.checks.push_back(upper("moment map fiber-linear", lin, 1e-12));
    rep.checks.push_back(upper("lambda_x equivariance", eq, 1e-10));
    rep.checks.push_back(upper("twisted moment image invariants", inv, 1e-8));
    rep.checks.push_back(upper("twisted moment round trip", rt, 1e-9));
    rep.checks.push_back(upper("zero section maps to lambda_x", zero, 1e-12));

    bool rejected = false;
    try {
        model.twisted_moment_inverse(CMatrix(ell.asDiagonal()) * 1.01, ell);
    } catch (const Error& e) {
        rejected = e.code() == ErrorCode::off_orbit;
    }
    rep.checks.push_back({"off-orbit input rejected", rejected ? 0.0 : 1.0, 0.0, rejected, {}});

    const OrbitImageReport img = orbit_image_check(model, ell, seed, samples);
    rep.checks.push_back(upper("orbit image on RP^1", img.max_imag_ratio, 1e-9, "samples=" + std::to_string(img.samples)));
    rep.checks.push_back(upper("base point of lambda", img.base_offset, 1e-12));
    rep.checks.push_back(upper("bounded real part of moment", img.max_re_moment, img.bound * (1 + 1e-12) + 1e-15,
                               "bound=" + fmt(img.bound)));

    const std::vector<double> shifts{0, 1, -1, 10, -10, 100, -100};
    double drift = 0, base = 0, conormal = 0;
    bool ranks = true;
    for (const double phi : {0.3, 1.1, 2.5}) {
        const FiberReport f = fiber_structure_check(model, ell, phi, 0.4, -0.7, shifts);
        drift = std::max(drift, f.invariant_drift);
        base = std::max(base, f.base_drift);
        conormal = std::max(conormal, f.conormal_defect);
        ranks = ranks && f.conormal_rank == f.expected_rank && f.expected_rank == 1;
    }
    rep.checks.push_back(upper("nilradical translate stays on orbit", drift, 1e-8));
    rep.checks.push_back(upper("nilradical translate keeps base point", base, 1e-8));
    rep.checks.push_back(upper("fiber offset is conormal", conormal, 1e-9));
    rep.checks.push_back({"conormal dimension count", ranks ? 0.0 : 1.0, 0.0, ranks, "dim X - dim O = 1"});

    std::vector<double> s;
    for (int k = 0; k <= 20; ++k)
        s.push_back(std::ldexp(1.0, -k));
    const ScalingReport sc = cycle_scaling_limit(model, ell, s, 1000, seed);
    rep.checks.push_back(upper("scaling s = 1 is the identity", sc.identity_residual, 0.0));
    const ScalingRow& last = sc.rows.back();
    rep.checks.push_back(upper("scaling defect at s = 2^-20 (conormal distance)", last.conormal_distance, 1e-5));
    rep.checks.push_back(upper("scaling defect at s = 2^-20 (imaginary moment)", last.imaginary_defect, 1e-5));
    // rate window; defects at the rounding floor count as already converged
    constexpr double floor = 1e-13;
    double lo = 1, hi = 0;
    bool any = false;
    for (size_t k = 1; k < sc.rows.size(); ++k) {
        if (sc.rows[k].s > 1.0 / 64)
            continue;
        for (auto field : {&ScalingRow::conormal_distance, &ScalingRow::imaginary_defect}) {
            if (sc.rows[k - 1].*field <= floor)
                continue;
            const double ratio = sc.rows[k].*field / (sc.rows[k - 1].*field);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            any = true;
        }
    }
    const bool window = !any || (lo >= 0.3 && hi <= 0.7);
    rep.checks.push_back({"scaling ratio defect(s)/defect(2s) in [0.3, 0.7]", any ? hi : 0.0, 0.7, window,
                          any ? "min=" + fmt(lo) + ", max=" + fmt(hi) : "defects at rounding floor"});
    auto slope_ok = [](double v) { return std::isnan(v) || std::abs(v - 1.0) <= 0.1; };
    rep.checks.push_back({"scaling log-log slope", sc.slope_imaginary, 1.0,
                          slope_ok(sc.slope_distance) && slope_ok(sc.slope_imaginary) &&
                              (!any || (!std::isnan(sc.slope_distance) && !std::isnan(sc.slope_imaginary))),
                          "conormal=" + fmt(sc.slope_distance) + ", imaginary=" + fmt(sc.slope_imaginary)});
    rep.checks.push_back({"scaling defects monotone", sc.monotone ? 0.0 : 1.0, 0.0, sc.monotone, "10% jitter allowed"});
    return rep;
}

namespace {

OrbitSpec spec_from(const VerifyOptions& opt) {
    const AlgebraPtr alg = AlgebraSpec::build(opt.family, opt.n);
    const Vector lambda = opt.lambda.size() ? opt.lambda : default_lambda(opt.family, opt.n);
    const MultiplicityMode mode = opt.family == Family::su ? MultiplicityMode::compact : MultiplicityMode::maximally_split;
    return OrbitSpec::make(alg, lambda, mode, opt.s0);
}

CMatrix twist_of(const VerifyOptions& opt) {
    if (opt.twist.size())
        return opt.twist;
    CMatrix g(2, 2);
    g << 1.0, Complex(0, 0.5), 0.0, 1.0;
    return g;
}

Report algebra_suite(const VerifyOptions& opt) {
    Report rep;
    rep.suite = "algebra";
    const AlgebraPtr algp = AlgebraSpec::build(opt.family, opt.n);
    const AlgebraSpec& alg = *algp;
    const int d = alg.dimension();

    double anti = 0, jac = 0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                anti = std::max(anti, std::abs(alg.structure_constant(i, j, k) + alg.structure_constant(j, i, k)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                const AlgebraElement a = AlgebraElement::real(Vector::Unit(d, i));
                const AlgebraElement b = AlgebraElement::real(Vector::Unit(d, j));
                const AlgebraElement c = AlgebraElement::real(Vector::Unit(d, k));
                const CVector s = alg.bracket(a, alg.bracket(b, c)).coords + alg.bracket(b, alg.bracket(c, a)).coords +
                                  alg.bracket(c, alg.bracket(a, b)).coords;
                jac = std::max(jac, s.cwiseAbs().maxCoeff());
            }
    rep.checks.push_back(upper("structure constants antisymmetric", anti, 1e-12));
    rep.checks.push_back(upper("Jacobi identity", jac, 1e-12));

    const Matrix& kill = alg.killing_matrix();
    double inv = 0;
    for (int z = 0; z < d; ++z) {
        const Matrix adz = alg.adjoint_matrix(AlgebraElement::real(Vector::Unit(d, z))).real();
        inv = std::max(inv, (adz.transpose() * kill + kill * adz).cwiseAbs().maxCoeff());
    }
    rep.checks.push_back(upper("Killing form symmetric", (kill - kill.transpose()).cwiseAbs().maxCoeff(), 1e-12));
    rep.checks.push_back(upper("Killing form invariant", inv, 1e-10));
    const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(kill).eigenvalues();
    const bool definite = opt.family == Family::su ? ev.maxCoeff() < 0 : (ev.minCoeff() < 0 && ev.maxCoeff() > 0);
    rep.checks.push_back({"Killing form signature", definite ? 0.0 : 1.0, 0.0, definite,
                          opt.family == Family::su ? "negative definite" : "indefinite"});
    rep.checks.push_back(upper("Killing form equals 2n tr", std::abs(alg.trace_scale() - 2.0 * opt.n), 1e-12));

    PhiloxStream rng(opt.seed, 31);
    double iso = 0, red = 0, comm = 0;
    for (int k = 0; k < 50; ++k) {
        Vector v(d);
        for (int i = 0; i < d; ++i)
            v(i) = rng.normal_pair()[0];
        const AlgebraElement x = AlgebraElement::real(v);
        iso = std::max(iso, (alg.iso_I_inv(alg.iso_I(x)).coords - x.coords).cwiseAbs().maxCoeff());
        const AlgebraElement r = random_regular_element(rng, alg, 1.5, 0.05);
        const auto cr = reduce_to_cartan(algp, r, standard_cartan(algp));
        if (!cr)
            continue;
        const CMatrix m = cr->g * alg.to_matrix(r) * cr->g.inverse();
        red = std::max(red, (m - alg.to_matrix(cr->reduced)).cwiseAbs().maxCoeff());
        for (const auto& h : alg.standard_cartan_basis())
            comm = std::max(comm, alg.bracket(cr->reduced, h).coords.cwiseAbs().maxCoeff());
    }
    rep.checks.push_back(upper("iso_I round trip", iso, 1e-12));
    rep.checks.push_back(upper("reduce_to_cartan round trip", red, 1e-10));
    rep.checks.push_back(upper("reduced element commutes with the Cartan", comm, 1e-12));

    // root vectors and kernel dimension at a regular element
    const AlgebraElement x = random_regular_element(rng, alg, 1.5, 0.1);
    const CartanDatum cd = cartan_of(algp, x);
    double eig = 0;
    for (size_t r = 0; r < cd.roots.size(); ++r)
        for (int k = 0; k < cd.rank(); ++k) {
            const AlgebraElement& h = cd.basis[static_cast<size_t>(k)];
            const Complex a = cd.roots[r](cd.diagonal_of(h));
            eig = std::max(eig, (alg.bracket(h, cd.root_vectors[r]).coords - a * cd.root_vectors[r].coords).cwiseAbs().maxCoeff());
        }
    rep.checks.push_back(upper("[H, E_alpha] = alpha(H) E_alpha", eig, 1e-10));
    const Eigen::Index kernel =
        alg.dimension() - Eigen::FullPivLU<CMatrix>(alg.adjoint_matrix(x)).setThreshold(1e-10).rank();
    rep.checks.push_back({"dim ker ad(X) = rank", static_cast<double>(kernel), static_cast<double>(alg.rank()),
                          kernel == alg.rank() && static_cast<int>(cd.roots.size()) == d - alg.rank(), {}});

    const WeylGroup& w = cd.weyl;
    bool closed = true;
    for (size_t a = 0; a < w.order(); ++a)
        for (size_t b = 0; b < w.order(); ++b)
            closed = closed && w.compose(a, b) != WeylGroup::npos;
    long fact = 1;
    for (int k = 2; k <= opt.n; ++k)
        fact *= k;
    rep.checks.push_back({"Weyl group closed, order n!", static_cast<double>(w.order()), static_cast<double>(fact),
                          closed && static_cast<long>(w.order()) == fact, {}});

    const IwasawaDatum iw = iwasawa(algp);
    const Matrix id = Matrix::Identity(d, d);
    rep.checks.push_back(upper("Cartan involution squares to 1", (iw.theta * iw.theta - id).cwiseAbs().maxCoeff(), 1e-12));
    const long dims = iw.k.cols() + iw.a.cols() + iw.n.cols();
    rep.checks.push_back({"Iwasawa dimension count", static_cast<double>(dims), static_cast<double>(d), dims == d,
                          "k=" + std::to_string(iw.k.cols()) + " a=" + std::to_string(iw.a.cols()) +
                              " n=" + std::to_string(iw.n.cols())});
    Matrix lower = iw.n;
    int steps = 0;
    while (lower.cols() > 0 && steps <= opt.n) {
        lower = bracket_span(alg, iw.n, lower);
        ++steps;
    }
    rep.checks.push_back({"n_R nilpotent", static_cast<double>(lower.cols()), 0.0, lower.cols() == 0,
                          "lower central series length " + std::to_string(steps)});
    return rep;
}

Report fixedpoints_suite(const VerifyOptions& opt) {
    Report rep;
    rep.suite = "fixedpoints";
    const OrbitSpec spec = spec_from(opt);
    const CartanDatum& cd = spec.cartan;
    const size_t order = cd.weyl.order();
    rep.checks.push_back({"fixed-point count equals |W|", static_cast<double>(spec.points.size()),
                          static_cast<double>(order), spec.points.size() == order, {}});

    std::set<Root> all(cd.roots.begin(), cd.roots.end());
    bool borel = true, lam = true;
    for (const auto& p : spec.points) {
        std::set<Root> s(p.borel_roots.begin(), p.borel_roots.end());
        std::set<Root> both = s;
        for (const auto& r : p.borel_roots)
            both.insert(r.negated());
        borel = borel && p.borel_roots.size() == cd.positive.size() && both == all;
        for (const auto& a : p.borel_roots)
            for (const auto& b : p.borel_roots)
                if (a.j == b.i && a.i != b.j && !s.count(Root{a.i, b.j}))
                    borel = false;
        lam = lam && (p.lambda_x - p.weyl.apply(spec.ell)).cwiseAbs().maxCoeff() == 0.0;
    }
    const auto neg = cd.negative();
    const bool base = spec.points.front().weyl.label == "e" && spec.points.front().borel_roots == neg;
    rep.checks.push_back({"Borel root lists partition the roots and are closed", borel ? 0.0 : 1.0, 0.0, borel, {}});
    rep.checks.push_back({"base fixed point carries the negative roots", base ? 0.0 : 1.0, 0.0, base, {}});
    rep.checks.push_back({"lambda_x = w lambda", lam ? 0.0 : 1.0, 0.0, lam, {}});

    PhiloxStream rng(opt.seed, 37);
    bool split = true;
    for (int k = 0; k < 50; ++k) {
        const Vector y = random_diagonal(rng, opt.n, 2.0, 0.05);
        const CVector yc = y.cast<Complex>();
        const PositiveSplit ps = split_positive_system(yc, cd.positive);
        split = split && satisfies_split_conditions(yc, cd.positive, ps);
        const PositiveSplit flipped = split_positive_system(-yc, cd.positive);
        split = split && flipped.negative_part == ps.positive_part && flipped.positive_part == ps.negative_part;
    }
    rep.checks.push_back({"Phi'/Phi'' conditions a) and b)", split ? 0.0 : 1.0, 0.0, split, "50 random X"});

    const auto support = closed_orbit_support(cd, spec.points);
    const bool full = std::all_of(support.begin(), support.end(), [](bool b) { return b; });
    rep.checks.push_back({"closed-orbit support is every fixed point", full ? 0.0 : 1.0, 0.0, full, {}});

    std::vector<FixedPoint> pts = spec.points;
    const MultiplicityMode mode = spec.mode;
    const auto a = assign_multiplicities(pts, mode, 1);
    const auto b = assign_multiplicities(pts, mode, -1);
    bool cov = true;
    for (const auto& [label, v] : a.values)
        cov = cov && (mode == MultiplicityMode::compact ? b.values.at(label) == v : b.values.at(label) == -v);
    rep.checks.push_back({"global sign covariance of multiplicities", cov ? 0.0 : 1.0, 0.0, cov, {}});
    if (mode == MultiplicityMode::compact)
        rep.checks.push_back(check_compact_multiplicities(spec));
    else {
        bool alt = true;
        for (const auto& p : spec.points)
            alt = alt && p.multiplicity == p.weyl.sign * spec.s0;
        rep.checks.push_back({"split multiplicities alternate with det(w)", alt ? 0.0 : 1.0, 0.0, alt, {}});
    }
    return rep;
}

Report localize_suite(const VerifyOptions& opt) {
    Report rep;
    rep.suite = "localize";
    const OrbitSpec spec = spec_from(opt);
    rep.checks.push_back(check_casimir(spec, opt.seed, 100, 1e-3, 1e-4));
    rep.checks.push_back(check_ad_invariance(spec, opt.seed, 50, 1e-9));
    const AlgebraSpec& alg = *spec.algebra;
    if (spec.mode == MultiplicityMode::compact) {
        rep.checks.push_back(check_weyl_invariance(spec, opt.seed, 10, 1e-12));
        if (opt.n == 2) {
            rep.checks.push_back(check_compact_limit(spec, 20, 1e-6));
            PhiloxStream rng(opt.seed, 41);
            double sym = 0;
            for (int k = 0; k < 20; ++k) {
                const AlgebraElement x = random_regular_element(rng, alg, 1.5, 0.05);
                const AlgebraElement mx = AlgebraElement::real(-x.real_coords());
                const auto rows = fourier_grid(spec, {x, mx});
                sym = std::max(sym, std::abs(rows[0].result.value - rows[1].result.value));
            }
            rep.checks.push_back(upper("grid symmetry F(-X) = F(X)", sym, 1e-12));
        }
    } else {
        rep.checks.push_back(check_elliptic_vanishing(spec, opt.seed, 100));
        if (opt.n == 2)
            rep.checks.push_back(check_split_reality(spec, opt.seed, 100, 1e-12));
        const OrbitSpec flipped = OrbitSpec::make(spec.algebra, spec.lambda_coords, spec.mode, -spec.s0);
        PhiloxStream rng(opt.seed, 43);
        double cov = 0;
        for (int k = 0; k < 20; ++k) {
            const AlgebraElement x = random_regular_element(rng, alg, 1.5, 0.05);
            cov = std::max(cov, std::abs(fourier_value(spec, x).value + fourier_value(flipped, x).value));
        }
        rep.checks.push_back(upper("s0 -> -s0 negates F", cov, 0.0));
    }
    const auto rows = fourier_grid(spec, {alg.cartan_element(Vector::Zero(alg.rank()))});
    rep.checks.push_back({"wall row flagged degenerate", rows[0].result.degenerate ? 0.0 : 1.0, 0.0,
                          rows[0].result.degenerate, rows[0].error});
    return rep;
}

Report oracle_suite(const VerifyOptions& opt) {
    Report rep;
    rep.suite = "oracle";
    const OrbitSpec spec = spec_from(opt);
    const AlgebraSpec& alg = *spec.algebra;
    if (spec.mode == MultiplicityMode::compact) {
        rep.checks.push_back(check_mc_agreement(spec, opt.seed, opt.samples, opt.points, opt.points / 10));

        // orbit membership of samples
        const Vector target = Eigen::SelfAdjointEigenSolver<CMatrix>(CMatrix(spec.ell.asDiagonal())).eigenvalues();
        double orbit = 0;
        for (const auto& z : haar_orbit_sample(spec, opt.seed, 1000)) {
            const Vector ev = Eigen::SelfAdjointEigenSolver<CMatrix>(z).eigenvalues();
            orbit = std::max(orbit, (ev - target).cwiseAbs().maxCoeff());
        }
        rep.checks.push_back(upper("orbit samples keep the spectrum of lambda", orbit, 1e-10));

        PhiloxStream rng(opt.seed, 47);
        const AlgebraElement x = random_regular_element(rng, alg, 1.0, 0.05);
        const McEstimate m1 = mc_raw_average(spec, x, opt.seed, 4096);
        const McEstimate m2 = mc_raw_average(spec, x, opt.seed, 4096);
        const bool same = m1.mean == m2.mean && m1.std_error == m2.std_error;
        rep.checks.push_back({"Monte Carlo determinism", same ? 0.0 : 1.0, 0.0, same, "same seed, bitwise"});

        // nested dyadic N: consistent means, standard error shrinking like 1/sqrt(N)
        std::vector<McEstimate> est;
        for (int k = 3; k >= 0; --k)
            est.push_back(mc_raw_average(spec, x, opt.seed + 101, std::max<std::uint64_t>(64, opt.samples >> k)));
        double zmax = 0;
        bool shrink = true;
        for (size_t i = 0; i < est.size(); ++i) {
            for (size_t j = i + 1; j < est.size(); ++j)
                zmax = std::max(zmax, std::abs(est[i].mean - est[j].mean) / std::hypot(est[i].std_error, est[j].std_error));
            if (i > 0) {
                const double ratio = est[i].std_error / est[i - 1].std_error;
                shrink = shrink && ratio > 0.5 / std::sqrt(2.0) && ratio < 2.0 / std::sqrt(2.0);
            }
        }
        Check c = upper("dyadic-N means consistent (combined z)", zmax, 3.0);
        c.passed = c.passed && shrink;
        c.detail = shrink ? "stderr ~ 1/sqrt(N)" : "stderr does not shrink like 1/sqrt(N)";
        rep.checks.push_back(c);
    } else if (opt.n == 2) {
        const AlgebraElement x = alg.cartan_element(Vector::Constant(1, 1.0));
        const SignCalibration sc = calibrate_sign(spec, x, opt.eps);
        const double f = fourier_value(OrbitSpec::make(spec.algebra, spec.lambda_coords, spec.mode, sc.s0), x).value.real();
        rep.checks.push_back(upper("damped extrapolation vs fixed-point sum (relative)",
                                   std::abs(sc.extrapolated - f) / std::abs(f), 0.1,
                                   "s0=" + std::to_string(sc.s0) + ", extrapolated=" + fmt(sc.extrapolated) + ", F=" + fmt(f)));
        DampedOptions fine;
        fine.refine = 2.0;
        const std::vector<double> last{opt.eps.back()};
        const double coarse = damped_oscillatory_integral(spec, x, last)[0];
        const double refined = damped_oscillatory_integral(spec, x, last, fine)[0];
        rep.checks.push_back(upper("damped quadrature mesh refinement change", std::abs(refined - coarse) / std::abs(refined), 0.01));
        const SignCalibration sc2 = calibrate_sign(spec, x, opt.eps, fine);
        rep.checks.push_back({"s0 stable under mesh refinement", sc2.s0 == sc.s0 ? 0.0 : 1.0, 0.0, sc2.s0 == sc.s0,
                              "s0=" + std::to_string(sc.s0)});
        rep.checks.push_back({"configured s0 matches calibration", spec.s0 == sc.s0 ? 0.0 : 1.0, 0.0, spec.s0 == sc.s0,
                              "configured " + std::to_string(spec.s0) + ", calibrated " + std::to_string(sc.s0)});
    } else {
        rep.checks.push_back({"oracle", 0, 0, true, "no oracle for split forms beyond sl(2,R)"});
    }
    return rep;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"algebra", "fixedpoints", "localize", "geometry", "oracle", "all"};
    return names;
}

Report run_suite(const std::string& suite, const VerifyOptions& opt) {
    if (suite == "algebra")
        return algebra_suite(opt);
    if (suite == "fixedpoints")
        return fixedpoints_suite(opt);
    if (suite == "localize")
        return localize_suite(opt);
    if (suite == "geometry") {
        const Sl2Model model(twist_of(opt));
        CVector ell(2);
        const double l = opt.lambda.size() == 1 && opt.family == Family::sl_real ? std::abs(opt.lambda(0)) : 0.5;
        ell << Complex(0, l), Complex(0, -l);
        return geometry_checks(model, ell, opt.seed, 10000);
    }
    if (suite == "oracle")
        return oracle_suite(opt);
    if (suite == "all") {
        Report rep;
        rep.suite = "all";
        for (const auto& name : suite_names())
            if (name != "all")
                rep.append(run_suite(name, opt));
        return rep;
    }
    fail(ErrorCode::invalid_argument, "unknown suite '" + suite + "'");
}

} // namespace orbitloc
