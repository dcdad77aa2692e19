// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "core/localize.hpp"
#include "core/rng.hpp"

namespace orbitloc {

/// Monte Carlo work is split into this many counter blocks, reduced in block
/// order, so results depend on (seed, N) only.
inline constexpr int kMcBlocks = 64;

struct McEstimate {
    Complex mean;
    double std_error = 0; // of the mean, real and imaginary variances combined
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Haar-distributed element of U(n): modified Gram-Schmidt on a complex
/// Gaussian matrix, which leaves R with a positive diagonal.
CMatrix haar_unitary(PhiloxStream& rng, int n);

/// N points of the compact orbit as Hermitian matrices I^{-1}(zeta) = u diag(ell) u^dagger.
std::vector<CMatrix> haar_orbit_sample(const OrbitSpec& spec, std::uint64_t seed, std::uint64_t n);

/// Plain average of e^{<X, zeta>} over Haar samples (no normalization constant).
/// `stream` separates independent uses of the same seed.
McEstimate mc_raw_average(const OrbitSpec& spec, const AlgebraElement& x, std::uint64_t seed, std::uint64_t n,
                          std::uint64_t stream = 0);

/// c * mc_raw_average: the orbit integral in the normalization of the fixed-point sum.
McEstimate mc_fourier_integral(const OrbitSpec& spec, const AlgebraElement& x, std::uint64_t seed, std::uint64_t n,
                               double c, std::uint64_t stream = 0);

struct Calibration {
    double c = 0;
    double c_stderr = 0;
    Complex reference_value;
    McEstimate raw;
};

/// One-point calibration of the Haar-to-Liouville constant at X0 (compact forms).
/// Samples come from a stream reserved for calibration.
Calibration calibrate_constant(const OrbitSpec& spec, const AlgebraElement& x0, std::uint64_t seed,
                               std::uint64_t n);

inline constexpr std::uint64_t kCalibrationStream = 0x63616c6962ull;

struct DampedOptions {
    double refine = 1.0;  // multiplies the node counts of both quadratures
    double cutoff = 40.0; // truncate where the damping factor falls below e^{-cutoff}
};

/// (1/2 pi i) * integral of e^{<X,zeta>} e^{-eps |zeta|^2} d(beta) over the sl(2,R) hyperboloid
/// orbit, one value per eps. X must be split regular.
std::vector<double> damped_oscillatory_integral(const OrbitSpec& spec, const AlgebraElement& x,
                                                const std::vector<double>& eps, const DampedOptions& opt = {});

/// Neville extrapolation of (eps_k, values_k) to eps = 0.
double extrapolate_to_zero(const std::vector<double>& eps, const std::vector<double>& values);

struct SignCalibration {
    int s0 = 1;
    double extrapolated = 0;
    double formula_value = 0; // fourier_value with s0 = +1
    std::vector<double> eps;
    std::vector<double> estimates;
};

/// Picks s0 so the damped integral and the fixed-point sum agree in sign at X.
SignCalibration calibrate_sign(const OrbitSpec& spec, const AlgebraElement& x, const std::vector<double>& eps,
                               const DampedOptions& opt = {});

} // namespace orbitloc
