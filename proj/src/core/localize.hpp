// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/fixedpoints.hpp"

namespace orbitloc {

/// Distance from a root hyperplane below which a point counts as degenerate.
inline constexpr double kWallTolerance = 1e-8;

/// Regular orbit of lambda = i * lambda', lambda' dual to the standard Cartan.
struct OrbitSpec {
    AlgebraPtr algebra;
    CartanDatum cartan;
    Vector lambda_coords; // lambda' on standard_cartan_basis(), as supplied
    CVector ell;          // diagonal of I^{-1}(lambda), positive chamber first
    MultiplicityMode mode = MultiplicityMode::compact;
    int s0 = 1;
    std::vector<FixedPoint> points;
    MultiplicityAssignment multiplicities;

    /// compact mode needs su(n), maximally_split needs sl(n,R); user_supplied works on both.
    static OrbitSpec make(const AlgebraPtr& algebra, const Vector& lambda_coords, MultiplicityMode mode,
                          int s0 = 1, const std::map<std::string, double>& user = {});

    /// B*(lambda, lambda) = B(I^{-1}lambda, I^{-1}lambda).
    Complex p2() const;
};

struct Term {
    std::string label;
    Complex exponent;    // <X, lambda_x>
    Complex denominator; // product of alpha_{x,j}(X)
    int multiplicity = 0;
    Complex value;
};

struct EvalResult {
    Complex value;
    std::vector<Term> terms;
    CVector reduced; // diagonal of X after Cartan reduction (empty when not conjugate)
    bool degenerate = false;
    bool support_empty = false;
};

/// Fixed-point sum at X. Degenerate points (within kWallTolerance of a wall) come
/// back flagged with a NaN value; non-regular X throws.
EvalResult evaluate(const OrbitSpec& spec, const AlgebraElement& x);

/// Like evaluate, but wall proximity raises ErrorCode::degenerate.
EvalResult fourier_value(const OrbitSpec& spec, const AlgebraElement& x);

struct GridRow {
    EvalResult result;
    std::string error; // set when the row could not be evaluated; result.degenerate is then true
};

/// One row per input, in input order. Non-regular and wall points are flagged, not dropped.
std::vector<GridRow> fourier_grid(const OrbitSpec& spec, const std::vector<AlgebraElement>& samples);

struct CasimirResult {
    double residual = 0;  // relative when `relative`, absolute otherwise
    bool relative = true;
    Complex laplacian;
    Complex value;
    Complex eigenvalue;
};

/// Central-difference check of d(p2) F = p2(lambda) F over a B-orthonormal basis.
CasimirResult casimir_check(const OrbitSpec& spec, const AlgebraElement& x, double h = 1e-3);

/// Basis e_k of g_R with B(e_j, e_k) = eta_k delta_jk, eta_k = +-1.
void orthonormal_killing_basis(const AlgebraSpec& algebra, Matrix& basis, Vector& eta);

struct InvarianceResult {
    double ad_difference = 0;
    double weyl_difference = 0; // max over w, compact mode only
    bool flagged = false;       // Ad(g)X left the regular set or hit a wall
};

InvarianceResult invariance_checks(const OrbitSpec& spec, const AlgebraElement& x, const CMatrix& g);

/// Ad(g)X for g in the group of the realization.
AlgebraElement adjoint_action(const AlgebraSpec& algebra, const CMatrix& g, const AlgebraElement& x);

} // namespace orbitloc
