// SPDX-License-Identifier: Apache-2.0
#include "core/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace orbitloc {

namespace {

constexpr Complex kI{0.0, 1.0};

CMatrix unit(int n, int i, int j) {
    CMatrix m = CMatrix::Zero(n, n);
    m(i, j) = 1.0;
    return m;
}

} // namespace

std::string to_string(Family f) { return f == Family::su ? "su" : "sl_real"; }

Family parse_family(const std::string& name) {
    if (name == "su")
        return Family::su;
    if (name == "sl_real" || name == "sl")
        return Family::sl_real;
    fail(ErrorCode::unsupported, "unsupported algebra family '" + name + "' (expected su or sl_real)");
}

AlgebraElement AlgebraElement::real(const Vector& v) { return {v.cast<Complex>(), Field::real}; }
AlgebraElement AlgebraElement::complex(const CVector& v) { return {v, Field::complex}; }

std::shared_ptr<const AlgebraSpec> AlgebraSpec::build(Family family, int n) {
    if (n < 2)
        fail(ErrorCode::invalid_argument, "rank parameter n must be >= 2, got " + std::to_string(n));
    if (n > 6)
        fail(ErrorCode::unsupported, "matrix size n > 6 is not supported");
    auto spec = std::shared_ptr<AlgebraSpec>(new AlgebraSpec(family, n));
    spec->validate();
    return spec;
}

AlgebraSpec::AlgebraSpec(Family family, int n) : family_(family), n_(n), dim_(n * n - 1) {
    for (int k = 0; k + 1 < n; ++k) {
        CMatrix h = unit(n, k, k) - unit(n, k + 1, k + 1);
        if (family == Family::su) {
            basis_.push_back(kI * h);
            labels_.push_back("iH" + std::to_string(k + 1));
        } else {
            basis_.push_back(h);
            labels_.push_back("H" + std::to_string(k + 1));
        }
    }
    if (family == Family::sl_real) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) {
                    basis_.push_back(unit(n, i, j));
                    labels_.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
                }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                basis_.push_back(unit(n, i, j) - unit(n, j, i));
                labels_.push_back("A" + std::to_string(i + 1) + std::to_string(j + 1));
                basis_.push_back(kI * (unit(n, i, j) + unit(n, j, i)));
                labels_.push_back("S" + std::to_string(i + 1) + std::to_string(j + 1));
            }
    }

    structure_.assign(static_cast<size_t>(dim_) * dim_ * dim_, 0.0);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            CMatrix c = basis_[i] * basis_[j] - basis_[j] * basis_[i];
            AlgebraElement e = from_matrix(c, Field::real);
            for (int k = 0; k < dim_; ++k)
                structure_[(static_cast<size_t>(i) * dim_ + j) * dim_ + k] = e.coords(k).real();
        }

    // B_ij = Tr(ad b_i ad b_j) = sum_{k,m} c_imk c_jkm
    killing_ = Matrix::Zero(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            double s = 0;
            for (int k = 0; k < dim_; ++k)
                for (int m = 0; m < dim_; ++m)
                    s += structure_constant(i, m, k) * structure_constant(j, k, m);
            killing_(i, j) = s;
        }
    killing_lu_ = killing_.partialPivLu();

    // B(H_1, H_1) = trace_scale * 2; for su the basis carries an extra factor i.
    const double b11 = killing_(0, 0);
    trace_scale_ = family == Family::su ? -b11 / 2.0 : b11 / 2.0;
}

void AlgebraSpec::validate() const {
    const double tol = 1e-12;
    double scale = 1.0;
    for (double c : structure_)
        scale = std::max(scale, std::abs(c));

    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            for (int k = 0; k < dim_; ++k)
                if (std::abs(structure_constant(i, j, k) + structure_constant(j, i, k)) > tol * scale)
                    fail(ErrorCode::invalid_argument, "structure constants are not antisymmetric");

    // Jacobi: [b_i,[b_j,b_k]] + [b_j,[b_k,b_i]] + [b_k,[b_i,b_j]] = 0
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            for (int k = j + 1; k < dim_; ++k)
                for (int q = 0; q < dim_; ++q) {
                    double s = 0;
                    for (int m = 0; m < dim_; ++m)
                        s += structure_constant(j, k, m) * structure_constant(i, m, q) +
                             structure_constant(k, i, m) * structure_constant(j, m, q) +
                             structure_constant(i, j, m) * structure_constant(k, m, q);
                    if (std::abs(s) > tol * scale * scale)
                        fail(ErrorCode::invalid_argument, "Jacobi identity violated");
                }

    const double bscale = killing_.cwiseAbs().maxCoeff();
    if ((killing_ - killing_.transpose()).cwiseAbs().maxCoeff() > tol * bscale)
        fail(ErrorCode::invalid_argument, "Killing form is not symmetric");
    for (int z = 0; z < dim_; ++z)
        for (int x = 0; x < dim_; ++x)
            for (int y = 0; y < dim_; ++y) {
                double s = 0;
                for (int m = 0; m < dim_; ++m)
                    s += structure_constant(z, x, m) * killing_(m, y) + structure_constant(z, y, m) * killing_(x, m);
                if (std::abs(s) > tol * bscale * scale)
                    fail(ErrorCode::invalid_argument, "Killing form is not ad-invariant");
            }

    Eigen::SelfAdjointEigenSolver<Matrix> es(killing_);
    const Vector& ev = es.eigenvalues();
    const double emax = ev.cwiseAbs().maxCoeff();
    if (ev.cwiseAbs().minCoeff() < tol * emax)
        fail(ErrorCode::invalid_argument, "Killing form is degenerate");
    const bool all_negative = ev.maxCoeff() < 0;
    if (family_ == Family::su && !all_negative)
        fail(ErrorCode::invalid_argument, "Killing form of su(n) must be negative definite");
    if (family_ == Family::sl_real && (all_negative || ev.minCoeff() > 0))
        fail(ErrorCode::invalid_argument, "Killing form of sl(n,R) must be indefinite");
}

void AlgebraSpec::check_size(const AlgebraElement& x) const {
    if (x.size() != dim_)
        fail(ErrorCode::invalid_argument, "element has " + std::to_string(x.size()) +
                                              " coordinates, algebra dimension is " + std::to_string(dim_));
}

CMatrix AlgebraSpec::to_matrix(const AlgebraElement& x) const {
    check_size(x);
    CMatrix m = CMatrix::Zero(n_, n_);
    for (int i = 0; i < dim_; ++i)
        if (x.coords(i) != 0.0)
            m += x.coords(i) * basis_[i];
    return m;
}

AlgebraElement AlgebraSpec::from_matrix(const CMatrix& m, Field field) const {
    if (m.rows() != n_ || m.cols() != n_)
        fail(ErrorCode::invalid_argument, "matrix has wrong size for this algebra");
    const double norm = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (std::abs(m.trace()) > 1e-10 * norm * n_)
        fail(ErrorCode::invalid_argument, "matrix is not traceless");

    CVector c(dim_);
    if (family_ == Family::sl_real) {
        Complex acc = 0;
        for (int k = 0; k + 1 < n_; ++k) {
            acc += m(k, k);
            c(k) = acc;
        }
        int idx = n_ - 1;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (i != j)
                    c(idx++) = m(i, j);
    } else {
        // m = A + iB with A, B anti-Hermitian; coordinates are coords(A) + i coords(B).
        const CMatrix a = (m - m.adjoint()) / 2.0;
        const CMatrix b = (m + m.adjoint()) / (2.0 * kI);
        auto coords_of = [&](const CMatrix& h) {
            Vector r(dim_);
            double acc = 0;
            for (int k = 0; k + 1 < n_; ++k) {
                acc += h(k, k).imag();
                r(k) = acc;
            }
            int idx = n_ - 1;
            for (int i = 0; i < n_; ++i)
                for (int j = i + 1; j < n_; ++j) {
                    r(idx++) = h(i, j).real();
                    r(idx++) = h(i, j).imag();
                }
            return r;
        };
        c = coords_of(a).cast<Complex>() + kI * coords_of(b).cast<Complex>();
    }

    if (field == Field::real) {
        const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
        if (c.imag().cwiseAbs().maxCoeff() > 1e-10 * scale)
            fail(ErrorCode::invalid_argument, "matrix does not lie in the real form");
        return AlgebraElement::real(c.real());
    }
    return AlgebraElement::complex(c);
}

AlgebraElement AlgebraSpec::bracket(const AlgebraElement& x, const AlgebraElement& y) const {
    check_size(x);
    check_size(y);
    CVector r = CVector::Zero(dim_);
    for (int i = 0; i < dim_; ++i) {
        if (x.coords(i) == 0.0)
            continue;
        for (int j = 0; j < dim_; ++j) {
            if (y.coords(j) == 0.0)
                continue;
            const Complex xy = x.coords(i) * y.coords(j);
            for (int k = 0; k < dim_; ++k)
                r(k) += xy * structure_constant(i, j, k);
        }
    }
    const bool real = x.field == Field::real && y.field == Field::real;
    return {r, real ? Field::real : Field::complex};
}

Complex AlgebraSpec::killing_form(const AlgebraElement& x, const AlgebraElement& y) const {
    check_size(x);
    check_size(y);
    return x.coords.transpose() * killing_.cast<Complex>() * y.coords;
}

CMatrix AlgebraSpec::adjoint_matrix(const AlgebraElement& x) const {
    check_size(x);
    CMatrix ad = CMatrix::Zero(dim_, dim_);
    for (int i = 0; i < dim_; ++i) {
        if (x.coords(i) == 0.0)
            continue;
        for (int j = 0; j < dim_; ++j)
            for (int k = 0; k < dim_; ++k)
                ad(k, j) += x.coords(i) * structure_constant(i, j, k);
    }
    return ad;
}

Covector AlgebraSpec::iso_I(const AlgebraElement& x) const {
    check_size(x);
    return {killing_.cast<Complex>() * x.coords};
}

AlgebraElement AlgebraSpec::iso_I_inv(const Covector& xi) const {
    if (xi.coords.size() != dim_)
        fail(ErrorCode::invalid_argument, "covector has wrong dimension");
    CVector re = killing_lu_.solve(Vector(xi.coords.real())).cast<Complex>();
    CVector im = killing_lu_.solve(Vector(xi.coords.imag())).cast<Complex>();
    CVector c = re + kI * im;
    const bool real = xi.coords.imag().cwiseAbs().maxCoeff() == 0.0;
    return {c, real ? Field::real : Field::complex};
}

Complex AlgebraSpec::pairing(const Covector& xi, const AlgebraElement& y) const {
    check_size(y);
    return xi.coords.transpose() * y.coords;
}

SpectrumInfo AlgebraSpec::spectrum(const AlgebraElement& x) const {
    Eigen::ComplexEigenSolver<CMatrix> es(to_matrix(x), false);
    SpectrumInfo info{es.eigenvalues(), 0.0};
    const double scale = info.eigenvalues.cwiseAbs().maxCoeff();
    if (scale == 0.0)
        return info;
    double sep = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            sep = std::min(sep, std::abs(info.eigenvalues(i) - info.eigenvalues(j)));
    info.relative_separation = sep / scale;
    return info;
}

bool AlgebraSpec::is_regular_semisimple(const AlgebraElement& x) const {
    // Distinct eigenvalues of the defining matrix <=> ad(x) diagonalizable with kernel of dimension rank.
    const SpectrumInfo info = spectrum(x);
    if (info.relative_separation < kRegularTolerance)
        return false;
    if (info.relative_separation < 10 * kRegularTolerance)
        fail(ErrorCode::indeterminate, "eigenvalue separation " + std::to_string(info.relative_separation) +
                                           " is inside the regular-semisimple guard band");
    return true;
}

std::vector<AlgebraElement> AlgebraSpec::standard_cartan_basis() const {
    std::vector<AlgebraElement> out;
    for (int k = 0; k + 1 < n_; ++k) {
        Vector v = Vector::Zero(dim_);
        v(k) = 1.0;
        out.push_back(AlgebraElement::real(v));
    }
    return out;
}

AlgebraElement AlgebraSpec::cartan_element(const Vector& coords) const {
    if (coords.size() != rank())
        fail(ErrorCode::invalid_argument, "Cartan coordinates must have length " + std::to_string(rank()));
    Vector v = Vector::Zero(dim_);
    v.head(rank()) = coords;
    return AlgebraElement::real(v);
}

CMatrix AlgebraSpec::real_structure(const CMatrix& m) const {
    if (family_ == Family::sl_real)
        return m.conjugate();
    return -m.adjoint();
}

} // namespace orbitloc
