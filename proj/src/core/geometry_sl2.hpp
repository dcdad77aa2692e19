// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "core/algebra.hpp"
#include "core/rng.hpp"

namespace orbitloc {

/// Point [z0 : z1] of CP^1, the flag variety of sl(2,C): the Borel fixing the line
/// through (z0, z1). Stored with unit norm and the larger coordinate real positive;
/// `chart` names that coordinate.
struct FlagPoint {
    Complex z0, z1;
    int chart = 0;

    static FlagPoint from(Complex z0, Complex z1);
    /// Affine coordinate in the owning chart: z1/z0 (chart 0) or z0/z1 (chart 1).
    Complex affine() const { return chart == 0 ? z1 / z0 : z0 / z1; }
    /// Distance from RP^1 measured by the imaginary part of the affine coordinate.
    double distance_to_real() const { return std::abs(affine().imag()); }
};

/// Covector eta dw at `base`, in the base's chart coordinate.
struct CotangentPoint {
    FlagPoint base;
    Complex eta;

    /// Component in the requested chart (dw' = -dw / w^2 on the overlap).
    Complex component(int chart) const;
};

/// CP^1 model with compact form U' = g SU(2) g^{-1}, g in SL(2,C). With g = 1 this is
/// the standard U_R; other choices are conjugate compact forms. A real g keeps
/// lambda_x imaginary over RP^1, so only a non-real g makes the scaling defects nonzero.
class Sl2Model {
public:
    Sl2Model();
    explicit Sl2Model(const CMatrix& twist);

    const AlgebraPtr& algebra() const { return algebra_; }
    const CMatrix& twist() const { return g_; }

    /// g.x for g in SL(2,C).
    static FlagPoint act(const CMatrix& g, const FlagPoint& x);

    /// I^{-1}(mu(zeta)) with mu(zeta)(X) = <zeta, X_flag>; nilpotent.
    CMatrix moment(const CotangentPoint& zeta) const;
    /// I^{-1}(lambda_x): lambda transported by the U'-stabilizer torus of x.
    /// `ell` is the diagonal of I^{-1}(lambda) at the base point [0 : 1].
    CMatrix lambda_at(const FlagPoint& x, const CVector& ell) const;
    CMatrix twisted_moment(const CotangentPoint& zeta, const CVector& ell) const;
    /// Throws ErrorCode::off_orbit when y's invariants differ from those of ell.
    CotangentPoint twisted_moment_inverse(const CMatrix& y, const CVector& ell) const;

    /// Uniform bound for ||Re I^{-1}(lambda_x)||_F over all of CP^1.
    double sup_re_lambda(const CVector& ell) const;

    /// Element of U'.
    CMatrix compact_element(PhiloxStream& rng) const;

private:
    AlgebraPtr algebra_;
    CMatrix g_, g_inv_;
    double kappa_;
};

/// Random point of the real orbit: k(theta) a(r) n(t) diag(ell) (...)^{-1}.
CMatrix real_orbit_sample(PhiloxStream& rng, const CVector& ell, double spread = 2.0);

/// Real pairing of a covector with a tangent vector under the identification
/// T*M = T*M^R used throughout: <zeta, v>_R = 2 Re(eta v).
inline double real_pairing(Complex eta, Complex v) { return 2.0 * (eta * v).real(); }

struct OrbitImageReport {
    double max_imag_ratio = 0;   // distance of pi(mu_lambda^{-1}(nu)) from RP^1
    double base_offset = 0;      // |z0| for nu = lambda (base point is [0 : 1])
    double max_re_moment = 0;    // sup ||Re I^{-1} mu(mu_lambda^{-1}(nu))||_F
    double bound = 0;            // sup_x ||Re I^{-1} lambda_x||_F
    std::size_t samples = 0;
};

OrbitImageReport orbit_image_check(const Sl2Model& model, const CVector& ell, std::uint64_t seed, std::size_t n);

struct FiberReport {
    double invariant_drift = 0;  // max relative change of det over t
    double base_drift = 0;       // base point movement
    double conormal_defect = 0;  // max |<offset, T RP^1>_R| / |offset|
    int conormal_rank = 0;
    int expected_rank = 0;       // dim_R X - dim_R O_lambda
};

/// x0 = [cos phi : sin phi]; nu is a real-orbit point over x0 built from (r, t).
FiberReport fiber_structure_check(const Sl2Model& model, const CVector& ell, double phi, double r, double t,
                                  const std::vector<double>& shifts);

struct ScalingRow {
    double s = 0;
    double conormal_distance = 0; // distance of s.zeta to the conormal bundle of RP^1
    double imaginary_defect = 0;  // ||Re I^{-1} mu(s.zeta)||_F
};

struct ScalingReport {
    std::vector<ScalingRow> rows;
    double identity_residual = 0; // s = 1 against the unscaled samples
    double slope_distance = 0;    // log-log fit over s <= 1/64, NaN if identically zero
    double slope_imaginary = 0;
    bool monotone = true;         // up to 10% jitter
};

ScalingReport cycle_scaling_limit(const Sl2Model& model, const CVector& ell, const std::vector<double>& s,
                                  std::size_t samples, std::uint64_t seed);

/// Uniformly distributed point of CP^1.
FlagPoint random_flag_point(PhiloxStream& rng);

} // namespace orbitloc
