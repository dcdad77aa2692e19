// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "core/error.hpp"

namespace orbitloc {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;

enum class Family { su, sl_real };

std::string to_string(Family f);
Family parse_family(const std::string& name);

enum class Field { real, complex };

/// Element of g_R (real coordinates) or of its complexification g.
/// Coordinates always refer to the ordered basis of the owning AlgebraSpec.
struct AlgebraElement {
    CVector coords;
    Field field = Field::real;

    static AlgebraElement real(const Vector& v);
    static AlgebraElement complex(const CVector& v);
    Eigen::Index size() const { return coords.size(); }
    Vector real_coords() const { return coords.real(); }
};

/// Linear functional on g, stored in the dual basis: <xi, Y> = sum_j xi_j Y_j.
struct Covector {
    CVector coords;
};

/// Regular semisimple classification outcome; `indeterminate` is never returned,
/// it is raised as an error.
struct SpectrumInfo {
    CVector eigenvalues;       // of the defining matrix
    double relative_separation; // min |mu_i - mu_j| / max |mu_i|
};

/// Concrete matrix realization of su(n) or sl(n,R).
///
/// sl(n,R) basis: H_k = E_kk - E_{k+1,k+1} (k = 1..n-1), then E_ij (i != j) row-major.
/// su(n) basis:   iH_k, then for i < j the pairs A_ij = E_ij - E_ji, S_ij = i(E_ij + E_ji).
/// Both families complexify to sl(n,C); complex coordinates over the same basis
/// represent elements of the complexification.
class AlgebraSpec {
public:
    static std::shared_ptr<const AlgebraSpec> build(Family family, int n);

    Family family() const { return family_; }
    int matrix_size() const { return n_; }
    int dimension() const { return dim_; }
    int rank() const { return n_ - 1; }
    const std::vector<std::string>& labels() const { return labels_; }
    const CMatrix& basis_matrix(int i) const { return basis_[static_cast<size_t>(i)]; }

    /// c[i][j][k]: [b_i, b_j] = sum_k c_ijk b_k.
    double structure_constant(int i, int j, int k) const {
        return structure_[(static_cast<size_t>(i) * dim_ + j) * dim_ + k];
    }
    const Matrix& killing_matrix() const { return killing_; }

    /// B(diag(x), diag(y)) = trace_scale * sum x_j y_j on diagonal matrices; equals 2n.
    double trace_scale() const { return trace_scale_; }

    CMatrix to_matrix(const AlgebraElement& x) const;
    AlgebraElement from_matrix(const CMatrix& m, Field field) const;

    AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const;
    Complex killing_form(const AlgebraElement& x, const AlgebraElement& y) const;
    CMatrix adjoint_matrix(const AlgebraElement& x) const;

    Covector iso_I(const AlgebraElement& x) const;
    AlgebraElement iso_I_inv(const Covector& xi) const;
    Complex pairing(const Covector& xi, const AlgebraElement& y) const;

    /// Returns true/false, or throws ErrorCode::indeterminate inside the guard band.
    bool is_regular_semisimple(const AlgebraElement& x) const;
    SpectrumInfo spectrum(const AlgebraElement& x) const;

    /// Real basis of the standard Cartan subalgebra h_R (diagonal matrices in the realization).
    std::vector<AlgebraElement> standard_cartan_basis() const;
    /// Element of h_R from coordinates on standard_cartan_basis().
    AlgebraElement cartan_element(const Vector& coords) const;

    /// Conjugation of g with respect to g_R (sigma), applied in the matrix realization.
    CMatrix real_structure(const CMatrix& m) const;

private:
    AlgebraSpec(Family family, int n);
    void validate() const;
    void check_size(const AlgebraElement& x) const;

    Family family_;
    int n_;
    int dim_;
    std::vector<std::string> labels_;
    std::vector<CMatrix> basis_;
    std::vector<double> structure_;
    Matrix killing_;
    Eigen::PartialPivLU<Matrix> killing_lu_;
    double trace_scale_ = 0;
};

using AlgebraPtr = std::shared_ptr<const AlgebraSpec>;

/// Relative eigenvalue-separation threshold for regular semisimple classification.
inline constexpr double kRegularTolerance = 1e-8;

} // namespace orbitloc
