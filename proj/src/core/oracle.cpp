// SPDX-License-Identifier: Apache-2.0
#include "core/oracle.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "core/parallel.hpp"

namespace orbitloc {

namespace {

constexpr int kMaxN = 6;

// Column-major n x n unitary into q.
void haar_fill(PhiloxStream& rng, int n, Complex* q) {
    for (int k = 0; k < n * n; ++k) {
        const auto z = rng.normal_pair();
        q[k] = Complex(z[0], z[1]);
    }
    for (int j = 0; j < n; ++j) {
        Complex* cj = q + j * n;
        for (int i = 0; i < j; ++i) {
            const Complex* ci = q + i * n;
            Complex r = 0.0;
            for (int k = 0; k < n; ++k)
                r += std::conj(ci[k]) * cj[k];
            for (int k = 0; k < n; ++k)
                cj[k] -= r * ci[k];
        }
        double norm = 0;
        for (int k = 0; k < n; ++k)
            norm += std::norm(cj[k]);
        norm = 1.0 / std::sqrt(norm);
        for (int k = 0; k < n; ++k)
            cj[k] *= norm;
    }
}

void require_compact(const OrbitSpec& spec) {
    if (spec.algebra->family() != Family::su)
        fail(ErrorCode::unsupported, "Haar orbit sampling needs a compact real form");
}

struct BlockSums {
    double re = 0, im = 0, re2 = 0, im2 = 0;
};

std::uint64_t block_count(std::uint64_t n, int b) {
    return n / kMcBlocks + (static_cast<std::uint64_t>(b) < n % kMcBlocks ? 1 : 0);
}

} // namespace

CMatrix haar_unitary(PhiloxStream& rng, int n) {
    if (n < 1 || n > kMaxN)
        fail(ErrorCode::invalid_argument, "unitary size out of range");
    CMatrix u(n, n);
    haar_fill(rng, n, u.data());
    return u;
}

std::vector<CMatrix> haar_orbit_sample(const OrbitSpec& spec, std::uint64_t seed, std::uint64_t n) {
    require_compact(spec);
    const int m = spec.algebra->matrix_size();
    const CMatrix lam = spec.ell.asDiagonal();
    std::vector<CMatrix> out;
    out.reserve(n);
    for (int b = 0; b < kMcBlocks; ++b) {
        PhiloxStream rng(seed, static_cast<std::uint64_t>(b));
        for (std::uint64_t k = 0, cnt = block_count(n, b); k < cnt; ++k) {
            const CMatrix u = haar_unitary(rng, m);
            out.push_back(u * lam * u.adjoint());
        }
    }
    return out;
}

McEstimate mc_raw_average(const OrbitSpec& spec, const AlgebraElement& x, std::uint64_t seed, std::uint64_t n,
                          std::uint64_t stream) {
    require_compact(spec);
    if (n < 2)
        fail(ErrorCode::invalid_argument, "Monte Carlo needs at least two samples");
    const AlgebraSpec& alg = *spec.algebra;
    const int m = alg.matrix_size();
    const CMatrix xm = alg.to_matrix(x);
    // <X, zeta> = B(X, u diag(ell) u^dagger) = kappa * sum_j ell_j (u^dagger X u)_jj
    std::array<double, kMaxN> w{};
    for (int j = 0; j < m; ++j)
        w[static_cast<size_t>(j)] = alg.trace_scale() * spec.ell(j).real();

    std::vector<BlockSums> sums(kMcBlocks);
    parallel_for(kMcBlocks, [&](size_t b) {
        PhiloxStream rng(seed, stream * kMcBlocks + b);
        std::array<Complex, kMaxN * kMaxN> q;
        std::array<Complex, kMaxN> y;
        BlockSums s;
        for (std::uint64_t k = 0, cnt = block_count(n, static_cast<int>(b)); k < cnt; ++k) {
            haar_fill(rng, m, q.data());
            Complex phase = 0.0;
            for (int j = 0; j < m; ++j) {
                const Complex* u = q.data() + j * m;
                for (int r = 0; r < m; ++r) {
                    Complex acc = 0.0;
                    for (int c = 0; c < m; ++c)
                        acc += xm(r, c) * u[c];
                    y[static_cast<size_t>(r)] = acc;
                }
                Complex d = 0.0;
                for (int r = 0; r < m; ++r)
                    d += std::conj(u[r]) * y[static_cast<size_t>(r)];
                phase += w[static_cast<size_t>(j)] * d;
            }
            const Complex v = std::exp(phase);
            s.re += v.real();
            s.im += v.imag();
            s.re2 += v.real() * v.real();
            s.im2 += v.imag() * v.imag();
        }
        sums[b] = s;
    });

    BlockSums t;
    for (const auto& s : sums) {
        t.re += s.re;
        t.im += s.im;
        t.re2 += s.re2;
        t.im2 += s.im2;
    }
    const double nn = static_cast<double>(n);
    McEstimate e;
    e.mean = Complex(t.re / nn, t.im / nn);
    const double var = (t.re2 - nn * e.mean.real() * e.mean.real() + t.im2 - nn * e.mean.imag() * e.mean.imag()) / (nn - 1);
    e.std_error = std::sqrt(std::max(0.0, var) / nn);
    e.samples = n;
    e.seed = seed;
    return e;
}

McEstimate mc_fourier_integral(const OrbitSpec& spec, const AlgebraElement& x, std::uint64_t seed, std::uint64_t n,
                               double c, std::uint64_t stream) {
    McEstimate e = mc_raw_average(spec, x, seed, n, stream);
    e.mean *= c;
    e.std_error *= std::abs(c);
    return e;
}

Calibration calibrate_constant(const OrbitSpec& spec, const AlgebraElement& x0, std::uint64_t seed, std::uint64_t n) {
    Calibration cal;
    cal.reference_value = fourier_value(spec, x0).value;
    cal.raw = mc_raw_average(spec, x0, seed, n, kCalibrationStream);
    const double mag = std::abs(cal.raw.mean);
    if (mag < 3 * cal.raw.std_error || std::abs(cal.reference_value) == 0.0)
        fail(ErrorCode::calibration, "calibration estimate is consistent with zero; pick a reference point closer to 0");
    cal.c = (cal.reference_value / cal.raw.mean).real();
    cal.c_stderr = std::abs(cal.reference_value) * cal.raw.std_error / (mag * mag);
    return cal;
}

std::vector<double> damped_oscillatory_integral(const OrbitSpec& spec, const AlgebraElement& x,
                                                const std::vector<double>& eps, const DampedOptions& opt) {
    const AlgebraSpec& alg = *spec.algebra;
    if (alg.family() != Family::sl_real || alg.matrix_size() != 2)
        fail(ErrorCode::unsupported, "the damped oracle covers the sl(2,R) hyperboloid only");
    if (!alg.is_regular_semisimple(x))
        fail(ErrorCode::not_regular, "X is not regular semisimple");
    const auto red = reduce_to_cartan(spec.algebra, x, spec.cartan);
    if (!red)
        fail(ErrorCode::unsupported, "X is elliptic; the damped oracle is restricted to split X");
    for (size_t k = 0; k < eps.size(); ++k)
        if (!(eps[k] > 0) || (k > 0 && !(eps[k] < eps[k - 1])))
            fail(ErrorCode::invalid_argument, "eps schedule must be positive and strictly decreasing");

    const double a = red->diagonal(0).real();
    const double l = spec.ell(0).imag(); // lambda' = diag(l, -l)
    const double kappa = alg.trace_scale();

    // Y'(theta, eta) = [[p, u+v], [u-v, -p]] on p^2 + u^2 - v^2 = l^2
    auto point = [&](double th, double et) {
        const double p = l * std::cosh(et) * std::cos(th), u = l * std::cosh(et) * std::sin(th), v = l * std::sinh(et);
        Eigen::Matrix2d y;
        y << p, u + v, u - v, -p;
        return y;
    };
    // Liouville density: solve [A, Y'] = dY' for both coordinate directions,
    // then d(beta)(d_theta, d_eta) = <zeta, [A_th, A_et]> / (2 pi i) = B(Y', [A_th, A_et]) / (2 pi).
    auto density = [&](double et) {
        const Eigen::Matrix2d y = point(0.0, et);
        const double c = std::cosh(et), s = std::sinh(et);
        Eigen::Matrix2d t_th, t_et;
        t_th << 0, l * c, l * c, 0;
        t_et << l * s, l * c, -l * c, -l * s;
        std::array<Eigen::Matrix2d, 3> basis;
        basis[0] << 1, 0, 0, -1;
        basis[1] << 0, 1, 0, 0;
        basis[2] << 0, 0, 1, 0;
        Eigen::Matrix<double, 4, 3> ad;
        for (int k = 0; k < 3; ++k) {
            const Eigen::Matrix2d br = basis[static_cast<size_t>(k)] * y - y * basis[static_cast<size_t>(k)];
            ad.col(k) = Eigen::Map<const Eigen::Vector4d>(br.data());
        }
        const Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix<double, 4, 3>> cod(ad);
        auto solve = [&](const Eigen::Matrix2d& t) {
            const Eigen::Vector3d coef = cod.solve(Eigen::Map<const Eigen::Vector4d>(t.data()));
            return Eigen::Matrix2d(coef(0) * basis[0] + coef(1) * basis[1] + coef(2) * basis[2]);
        };
        const Eigen::Matrix2d a1 = solve(t_th), a2 = solve(t_et);
        const Eigen::Matrix2d br = a1 * a2 - a2 * a1;
        return std::abs(kappa * (y * br).trace()) / (2 * std::numbers::pi);
    };

    std::vector<double> out;
    for (const double e : eps) {
        // damping exp(-e l^2 cosh 2 eta); integrand is even in eta
        const double eta_max = 0.5 * std::acosh(std::max(1.0, opt.cutoff / (e * l * l)));
        const double freq = kappa * 2 * std::abs(a) * l * std::sinh(eta_max);
        long n_eta = static_cast<long>(std::ceil(opt.refine * std::max(400.0, freq * eta_max / 0.2)));
        n_eta += n_eta % 2;
        const double h = eta_max / static_cast<double>(n_eta);
        double total = 0;
        for (long k = 0; k <= n_eta; ++k) {
            const double et = h * static_cast<double>(k);
            const double amp = kappa * 2 * a * l * std::cosh(et); // <X,zeta> = i amp cos(theta)
            const long m = static_cast<long>(std::ceil(opt.refine * (1.2 * std::abs(amp) + 32)));
            double ring = 0;
            for (long j = 0; j < m; ++j)
                ring += std::cos(amp * std::cos(2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m)));
            ring *= 2 * std::numbers::pi / static_cast<double>(m);
            const double f = density(et) * std::exp(-e * l * l * std::cosh(2 * et)) * ring;
            const double wgt = (k == 0 || k == n_eta) ? 1.0 : (k % 2 ? 4.0 : 2.0);
            total += wgt * f;
        }
        out.push_back(2 * total * h / 3);
    }
    return out;
}

double extrapolate_to_zero(const std::vector<double>& eps, const std::vector<double>& values) {
    if (eps.empty() || eps.size() != values.size())
        fail(ErrorCode::invalid_argument, "extrapolation needs matching non-empty sequences");
    std::vector<double> p(values);
    const size_t n = p.size();
    for (size_t m = 1; m < n; ++m)
        for (size_t i = 0; i + m < n; ++i)
            p[i] = (eps[i] * p[i + 1] - eps[i + m] * p[i]) / (eps[i] - eps[i + m]);
    return p[0];
}

SignCalibration calibrate_sign(const OrbitSpec& spec, const AlgebraElement& x, const std::vector<double>& eps,
                               const DampedOptions& opt) {
    SignCalibration out;
    out.eps = eps;
    out.estimates = damped_oscillatory_integral(spec, x, eps, opt);
    out.extrapolated = extrapolate_to_zero(eps, out.estimates);
    const OrbitSpec plus = OrbitSpec::make(spec.algebra, spec.lambda_coords, MultiplicityMode::maximally_split, 1);
    out.formula_value = fourier_value(plus, x).value.real();
    const double f = std::abs(out.formula_value);
    if (f < 1e-8 || std::abs(std::abs(out.extrapolated) - f) > 0.5 * f)
        fail(ErrorCode::calibration, "damped estimate " + std::to_string(out.extrapolated) +
                                         " is too far from the formula magnitude " + std::to_string(f) +
                                         " to fix the sign; move the reference point away from zeros of F");
    out.s0 = (out.extrapolated > 0) == (out.formula_value > 0) ? 1 : -1;
    return out;
}

} // namespace orbitloc
