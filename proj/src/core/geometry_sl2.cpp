// SPDX-License-Identifier: Apache-2.0
#include "core/geometry_sl2.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "core/oracle.hpp"

namespace orbitloc {

FlagPoint FlagPoint::from(Complex z0, Complex z1) {
    const double norm = std::sqrt(std::norm(z0) + std::norm(z1));
    if (!(norm > 0) || !std::isfinite(norm))
        fail(ErrorCode::invalid_argument, "homogeneous coordinates must be finite and not both zero");
    FlagPoint x;
    x.chart = std::abs(z0) >= std::abs(z1) ? 0 : 1;
    const Complex big = x.chart == 0 ? z0 : z1;
    const Complex phase = std::conj(big) / (std::abs(big) * norm);
    x.z0 = z0 * phase;
    x.z1 = z1 * phase;
    // the larger coordinate is real positive by construction; drop rounding residue
    (x.chart == 0 ? x.z0 : x.z1).imag(0.0);
    return x;
}

Complex CotangentPoint::component(int chart) const {
    if (chart == base.chart)
        return eta;
    const Complex w = base.affine();
    return -eta * w * w;
}

Sl2Model::Sl2Model() : Sl2Model(CMatrix::Identity(2, 2)) {}

Sl2Model::Sl2Model(const CMatrix& twist) : algebra_(AlgebraSpec::build(Family::sl_real, 2)) {
    if (twist.rows() != 2 || twist.cols() != 2 || !twist.allFinite() || std::abs(twist.determinant() - 1.0) > 1e-12)
        fail(ErrorCode::invalid_argument, "compact-form twist must lie in SL(2,C)");
    g_ = twist;
    g_inv_ = g_.inverse();
    kappa_ = algebra_->trace_scale();
}

FlagPoint Sl2Model::act(const CMatrix& g, const FlagPoint& x) {
    return FlagPoint::from(g(0, 0) * x.z0 + g(0, 1) * x.z1, g(1, 0) * x.z0 + g(1, 1) * x.z1);
}

CMatrix Sl2Model::moment(const CotangentPoint& zeta) const {
    // <zeta, X_flag> = Tr(X N). In chart 0, X = [[a,b],[c,-a]] moves w = z1/z0 at
    // speed c - 2aw - bw^2; chart 1 is the mirror image.
    const Complex w = zeta.base.affine();
    const Complex e = zeta.eta;
    CMatrix n(2, 2);
    if (zeta.base.chart == 0)
        n << -w, 1.0, -w * w, w;
    else
        n << w, -w * w, 1.0, -w;
    return e * n / kappa_;
}

CMatrix Sl2Model::lambda_at(const FlagPoint& x, const CVector& ell) const {
    // u in SU(2) with u.[0:1] = x; any other choice differs by the torus fixing diag(ell)
    const FlagPoint y = act(g_inv_, x);
    CMatrix u(2, 2);
    u << std::conj(y.z1), y.z0, -std::conj(y.z0), y.z1;
    return g_ * (u * ell.asDiagonal() * u.adjoint()) * g_inv_;
}

CMatrix Sl2Model::twisted_moment(const CotangentPoint& zeta, const CVector& ell) const {
    return moment(zeta) + lambda_at(zeta.base, ell);
}

CotangentPoint Sl2Model::twisted_moment_inverse(const CMatrix& y, const CVector& ell) const {
    const Complex det0 = ell(0) * ell(1);
    const double scale = std::max(1.0, std::abs(det0));
    const double tr = std::abs(y.trace()) / scale;
    const double det = std::abs(y.determinant() - det0) / scale;
    if (tr > 1e-8 || det > 1e-8)
        fail(ErrorCode::off_orbit, "point is off the orbit: trace mismatch " + std::to_string(tr) +
                                       ", determinant mismatch " + std::to_string(det));
    // base point: the ell_2-eigenline, which b_x fixes with eigenvalue ell_2
    const CMatrix m = y - ell(1) * CMatrix::Identity(2, 2);
    const int r = m.row(0).norm() >= m.row(1).norm() ? 0 : 1;
    CotangentPoint zeta;
    zeta.base = FlagPoint::from(m(r, 1), -m(r, 0));
    const CMatrix n = kappa_ * (y - lambda_at(zeta.base, ell));
    zeta.eta = zeta.base.chart == 0 ? n(0, 1) : n(1, 0);
    return zeta;
}

double Sl2Model::sup_re_lambda(const CVector& ell) const {
    // lambda_x = ell_1 g (n . sigma) g^{-1} with n on the unit sphere, so
    // Re lambda_x = sum_k n_k M_k and the sup is the top singular value of (M_x, M_y, M_z).
    const Complex l1 = ell(0);
    CMatrix sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, Complex(0, -1), Complex(0, 1), 0;
    sz << 1, 0, 0, -1;
    Matrix cols(4, 3);
    int k = 0;
    for (const CMatrix* s : {&sx, &sy, &sz}) {
        const Matrix re = (l1 * g_ * (*s) * g_inv_).real();
        cols.col(k++) = Eigen::Map<const Eigen::Vector4d>(re.data());
    }
    Eigen::JacobiSVD<Matrix> svd(cols);
    return svd.singularValues()(0);
}

CMatrix Sl2Model::compact_element(PhiloxStream& rng) const {
    return g_ * haar_unitary(rng, 2) * g_inv_;
}

CMatrix real_orbit_sample(PhiloxStream& rng, const CVector& ell, double spread) {
    const double th = 2 * std::numbers::pi * rng.uniform();
    const double r = spread * (2 * rng.uniform() - 1);
    const double t = spread * (2 * rng.uniform() - 1);
    Eigen::Matrix2d k, a, n;
    k << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    a << std::exp(r), 0, 0, std::exp(-r);
    n << 1, t, 0, 1;
    const CMatrix g = (k * a * n).cast<Complex>();
    return g * ell.asDiagonal() * g.inverse();
}

FlagPoint random_flag_point(PhiloxStream& rng) {
    const auto a = rng.normal_pair();
    const auto b = rng.normal_pair();
    return FlagPoint::from(Complex(a[0], a[1]), Complex(b[0], b[1]));
}

OrbitImageReport orbit_image_check(const Sl2Model& model, const CVector& ell, std::uint64_t seed, std::size_t n) {
    OrbitImageReport rep;
    rep.samples = n;
    rep.bound = model.sup_re_lambda(ell);
    rep.base_offset = std::abs(model.twisted_moment_inverse(CMatrix(ell.asDiagonal()), ell).base.z0);
    PhiloxStream rng(seed, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const CMatrix y = real_orbit_sample(rng, ell);
        const CotangentPoint zeta = model.twisted_moment_inverse(y, ell);
        rep.max_imag_ratio = std::max(rep.max_imag_ratio, zeta.base.distance_to_real());
        rep.max_re_moment = std::max(rep.max_re_moment, model.moment(zeta).real().norm());
    }
    return rep;
}

namespace {

// X_flag at a point, for X = [[a,b],[c,-a]], in the point's chart.
Complex vector_field(const FlagPoint& x, double a, double b, double c) {
    const Complex w = x.affine();
    return x.chart == 0 ? c - 2.0 * a * w - b * w * w : b + 2.0 * a * w - c * w * w;
}

int real_rank(const Matrix& m, double tol = 1e-9) {
    if (m.cols() == 0)
        return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const Vector& s = svd.singularValues();
    int r = 0;
    while (r < s.size() && s(r) > tol * std::max(1.0, s(0)))
        ++r;
    return r;
}

} // namespace

FiberReport fiber_structure_check(const Sl2Model& model, const CVector& ell, double phi, double r, double t,
                                  const std::vector<double>& shifts) {
    Eigen::Matrix2d k, b;
    k << std::sin(phi), std::cos(phi), -std::cos(phi), std::sin(phi); // k e2 = x0
    b << std::exp(r), 0, t * std::exp(-r), std::exp(-r);              // lower triangular: fixes [e2]
    const CMatrix g = (k * b).cast<Complex>();
    const CMatrix nu = g * ell.asDiagonal() * g.inverse();

    const CotangentPoint z0 = model.twisted_moment_inverse(nu, ell);
    const int chart = z0.base.chart;

    // n spans n_{x0,R}: n = z (Jz)^T kills z and maps into its line
    CMatrix n(2, 2);
    const double c = std::cos(phi), s = std::sin(phi);
    n << c * s, -c * c, s * s, -s * c;

    FiberReport rep;
    const Complex det0 = nu.determinant();
    Matrix offsets(2, 0);
    for (const double sh : shifts) {
        const CMatrix moved = nu + Complex(0, sh) * n;
        rep.invariant_drift = std::max(rep.invariant_drift, std::abs(moved.determinant() - det0) / std::max(1.0, std::abs(det0)));
        const CotangentPoint zt = model.twisted_moment_inverse(moved, ell);
        rep.base_drift = std::max(rep.base_drift, std::abs(zt.base.z0 - z0.base.z0) + std::abs(zt.base.z1 - z0.base.z1));
        const Complex delta = zt.component(chart) - z0.component(chart);
        // conormal to RP^1: zero real pairing with the real tangent direction
        rep.conormal_defect = std::max(rep.conormal_defect, std::abs(real_pairing(delta, 1.0)) / std::max(1.0, 2 * std::abs(delta)));
        if (sh != 0.0) {
            offsets.conservativeResize(Eigen::NoChange, offsets.cols() + 1);
            offsets.col(offsets.cols() - 1) << delta.real(), delta.imag();
        }
    }
    rep.conormal_rank = real_rank(offsets);

    // dim_R X = 2; dim_R O_lambda = real rank of the sl(2,R) action at x0
    Matrix tangent(2, 3);
    const double basis[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int j = 0; j < 3; ++j) {
        const Complex v = vector_field(z0.base, basis[j][0], basis[j][1], basis[j][2]);
        tangent.col(j) << v.real(), v.imag();
    }
    rep.expected_rank = 2 - real_rank(tangent);
    return rep;
}

ScalingReport cycle_scaling_limit(const Sl2Model& model, const CVector& ell, const std::vector<double>& s,
                                  std::size_t samples, std::uint64_t seed) {
    for (size_t k = 0; k < s.size(); ++k)
        if (!(s[k] > 0 && s[k] <= 1) || (k > 0 && !(s[k] < s[k - 1])))
            fail(ErrorCode::invalid_argument, "scaling schedule must decrease within (0, 1]");

    PhiloxStream rng(seed, 1);
    std::vector<CotangentPoint> base;
    base.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i)
        base.push_back(model.twisted_moment_inverse(real_orbit_sample(rng, ell), ell));

    ScalingReport rep;
    for (const double sc : s) {
        ScalingRow row;
        row.s = sc;
        for (const auto& z : base) {
            const CotangentPoint zs{z.base, sc * z.eta};
            if (sc == 1.0)
                rep.identity_residual = std::max(rep.identity_residual, std::abs(zs.eta - z.eta));
            row.conormal_distance = std::max(row.conormal_distance, z.base.distance_to_real() + std::abs(zs.eta.real()));
            row.imaginary_defect = std::max(row.imaginary_defect, model.moment(zs).real().norm());
        }
        rep.rows.push_back(row);
    }

    auto slope = [&](double ScalingRow::*field) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = 0;
        for (const auto& row : rep.rows) {
            if (row.s > 1.0 / 64 || !(row.*field > 0))
                continue;
            const double lx = std::log(row.s), ly = std::log(row.*field);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++m;
        }
        if (m < 2)
            return std::numeric_limits<double>::quiet_NaN();
        return (m * sxy - sx * sy) / (m * sxx - sx * sx);
    };
    rep.slope_distance = slope(&ScalingRow::conormal_distance);
    rep.slope_imaginary = slope(&ScalingRow::imaginary_defect);
    for (size_t k = 1; k < rep.rows.size(); ++k) {
        rep.monotone = rep.monotone && rep.rows[k].conormal_distance <= 1.1 * rep.rows[k - 1].conormal_distance &&
                       rep.rows[k].imaginary_defect <= 1.1 * rep.rows[k - 1].imaginary_defect;
    }
    return rep;
}

} // namespace orbitloc
