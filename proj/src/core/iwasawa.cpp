// SPDX-License-Identifier: Apache-2.0
#include "core/iwasawa.hpp"

#include <algorithm>
#include <cmath>

namespace orbitloc {

namespace {

Matrix null_space(const Matrix& m, double tol = 1e-10) {
    const Eigen::Index cols = m.cols();
    if (m.rows() == 0)
        return Matrix::Identity(cols, cols);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const Vector& s = svd.singularValues();
    const double smax = s.size() ? std::max(1.0, s(0)) : 1.0;
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > tol * smax)
        ++r;
    return svd.matrixV().rightCols(cols - r);
}

Matrix orthonormal_span(const Matrix& columns, double tol = 1e-10) {
    if (columns.cols() == 0)
        return Matrix(columns.rows(), 0);
    Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
    const Vector& s = svd.singularValues();
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > tol * std::max(1.0, s(0)))
        ++r;
    return svd.matrixU().leftCols(r);
}

Matrix ad_real(const AlgebraSpec& alg, const Vector& x) {
    return alg.adjoint_matrix(AlgebraElement::real(x)).real();
}

} // namespace

int real_rank(const Matrix& columns, double tol) {
    return static_cast<int>(orthonormal_span(columns, tol).cols());
}

Matrix bracket_span(const AlgebraSpec& algebra, const Matrix& lhs, const Matrix& rhs) {
    Matrix all(algebra.dimension(), lhs.cols() * rhs.cols());
    Eigen::Index c = 0;
    for (Eigen::Index i = 0; i < lhs.cols(); ++i)
        for (Eigen::Index j = 0; j < rhs.cols(); ++j)
            all.col(c++) = algebra.bracket(AlgebraElement::real(lhs.col(i)), AlgebraElement::real(rhs.col(j))).real_coords();
    return orthonormal_span(all);
}

IwasawaDatum iwasawa(const AlgebraPtr& algebra) {
    const AlgebraSpec& alg = *algebra;
    const int d = alg.dimension();
    IwasawaDatum out;

    out.theta.resize(d, d);
    for (int j = 0; j < d; ++j) {
        const CMatrix b = alg.basis_matrix(j);
        out.theta.col(j) = alg.from_matrix(-b.adjoint(), Field::real).real_coords();
    }
    const Matrix id = Matrix::Identity(d, d);
    out.k = null_space(out.theta - id);
    out.p = null_space(out.theta + id);

    // a_R: the p-part of the diagonal Cartan, which is maximal abelian in p for both families
    Matrix a_cols(d, 0);
    for (const auto& h : alg.standard_cartan_basis()) {
        const Vector v = h.real_coords();
        if ((out.theta * v + v).norm() < 1e-12) {
            a_cols.conservativeResize(Eigen::NoChange, a_cols.cols() + 1);
            a_cols.col(a_cols.cols() - 1) = v;
        }
    }
    out.a = a_cols;

    // m_R = centralizer of a_R in k_R
    if (out.a.cols() == 0) {
        out.m = out.k;
    } else {
        Matrix stacked(d * out.a.cols(), out.k.cols());
        for (Eigen::Index i = 0; i < out.a.cols(); ++i)
            stacked.middleRows(i * d, d) = ad_real(alg, out.a.col(i)) * out.k;
        out.m = out.k * null_space(stacked);
    }

    out.n = Matrix(d, 0);
    if (out.a.cols() == 0)
        return out;

    // restricted roots from a generic element of a_R
    Vector weights(out.a.cols());
    for (Eigen::Index i = 0; i < weights.size(); ++i)
        weights(i) = 1.0 + 0.3183098861837907 * static_cast<double>(i * i + 1) / (i + 2);
    const Vector generic = out.a * weights;
    Eigen::EigenSolver<Matrix> es(ad_real(alg, generic));
    const Vector ev = es.eigenvalues().real();
    const Matrix vecs = es.eigenvectors().real();
    const double scale = ev.cwiseAbs().maxCoeff();

    std::vector<bool> used(static_cast<size_t>(d), false);
    for (int i = 0; i < d; ++i) {
        if (used[static_cast<size_t>(i)] || std::abs(ev(i)) < 1e-9 * scale)
            continue;
        Matrix cols(d, 0);
        for (int j = i; j < d; ++j)
            if (!used[static_cast<size_t>(j)] && std::abs(ev(j) - ev(i)) < 1e-9 * scale) {
                used[static_cast<size_t>(j)] = true;
                cols.conservativeResize(Eigen::NoChange, cols.cols() + 1);
                cols.col(cols.cols() - 1) = vecs.col(j);
            }
        RestrictedRoot root;
        root.space = orthonormal_span(cols);
        const Vector v = root.space.col(0);
        root.values.resize(out.a.cols());
        for (Eigen::Index k = 0; k < out.a.cols(); ++k)
            root.values(k) = v.dot(ad_real(alg, out.a.col(k)) * v);
        out.roots.push_back(std::move(root));
    }
    std::sort(out.roots.begin(), out.roots.end(), [](const RestrictedRoot& x, const RestrictedRoot& y) {
        for (Eigen::Index k = 0; k < x.values.size(); ++k)
            if (std::abs(x.values(k) - y.values(k)) > 1e-9)
                return x.values(k) > y.values(k);
        return false;
    });

    // positive: alpha(rho) > 0 with rho = diag(n-1, ..., 1, 0) made traceless
    const int n = alg.matrix_size();
    CMatrix rho = CMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k)
        rho(k, k) = (n - 1 - k) - (n - 1) / 2.0;
    const Matrix ad_rho = ad_real(alg, alg.from_matrix(rho, Field::real).real_coords());
    for (size_t r = 0; r < out.roots.size(); ++r) {
        const Vector v = out.roots[r].space.col(0);
        if (v.dot(ad_rho * v) > 0)
            out.positive.push_back(r);
    }

    Matrix ncols(d, 0);
    for (size_t r = 0; r < out.roots.size(); ++r) {
        const Vector v = out.roots[r].space.col(0);
        if (v.dot(ad_rho * v) < 0) {
            const Matrix& s = out.roots[r].space;
            ncols.conservativeResize(Eigen::NoChange, ncols.cols() + s.cols());
            ncols.rightCols(s.cols()) = s;
        }
    }
    out.n = ncols;
    return out;
}

} // namespace orbitloc
