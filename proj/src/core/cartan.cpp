// SPDX-License-Identifier: Apache-2.0
#include "core/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

namespace orbitloc {

namespace {

Matrix permutation_matrix(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    Matrix m = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k)
        m(perm[static_cast<size_t>(k)], k) = 1.0;
    return m;
}

std::vector<long long> canonical_key(const Matrix& m) {
    std::vector<long long> key;
    key.reserve(static_cast<size_t>(m.size()));
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            key.push_back(std::llround(m(r, c) * 1e9));
    return key;
}

bool is_identity(const CMatrix& m) {
    return (m - CMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() < 1e-14;
}

} // namespace

Vector Root::epsilon(int n) const {
    Vector v = Vector::Zero(n);
    v(i) = 1.0;
    v(j) = -1.0;
    return v;
}

CVector WeylElement::apply(const CVector& mu) const {
    CVector out(mu.size());
    for (Eigen::Index k = 0; k < mu.size(); ++k)
        out(perm[static_cast<size_t>(k)]) = mu(k);
    return out;
}

size_t WeylElement::length() const {
    size_t inv = 0;
    for (size_t a = 0; a < perm.size(); ++a)
        for (size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b])
                ++inv;
    return inv;
}

WeylGroup WeylGroup::type_a(int n) {
    WeylGroup group;
    std::vector<int> id(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
        id[static_cast<size_t>(k)] = k;

    std::map<std::vector<long long>, size_t> seen;
    auto add = [&](std::vector<int> perm, std::string label) -> bool {
        Matrix act = permutation_matrix(perm);
        auto key = canonical_key(act);
        if (seen.count(key))
            return false;
        const double det = act.determinant();
        seen.emplace(std::move(key), group.elements_.size());
        group.elements_.push_back({std::move(perm), std::move(act), std::move(label), det > 0 ? 1 : -1});
        return true;
    };
    add(id, "e");

    // Level-by-level BFS. Each level is kept in lexicographic word order, and
    // generators are tried in increasing index, so the first word that reaches an
    // element is its lexicographically smallest reduced word.
    std::vector<size_t> level{0};
    while (!level.empty()) {
        std::vector<size_t> next;
        for (size_t idx : level) {
            for (int k = 0; k + 1 < n; ++k) {
                const WeylElement& u = group.elements_[idx];
                std::vector<int> perm(u.perm);
                // u * s_k: apply s_k first, then u
                std::swap(perm[static_cast<size_t>(k)], perm[static_cast<size_t>(k + 1)]);
                std::string word = (u.label == "e" ? "" : u.label) + "s" + std::to_string(k + 1);
                if (add(std::move(perm), std::move(word)))
                    next.push_back(group.elements_.size() - 1);
            }
        }
        level = std::move(next);
    }
    return group;
}

const WeylElement& WeylGroup::find(const std::string& label) const {
    for (const auto& w : elements_)
        if (w.label == label)
            return w;
    fail(ErrorCode::invalid_argument, "unknown Weyl element label '" + label + "'");
}

size_t WeylGroup::compose(size_t a, size_t b) const {
    const auto& pa = elements_.at(a).perm;
    const auto& pb = elements_.at(b).perm;
    std::vector<int> p(pa.size());
    for (size_t k = 0; k < p.size(); ++k)
        p[k] = pa[static_cast<size_t>(pb[k])];
    for (size_t i = 0; i < elements_.size(); ++i)
        if (elements_[i].perm == p)
            return i;
    return npos;
}

std::vector<Root> CartanDatum::negative() const {
    std::vector<Root> out;
    for (const auto& r : positive)
        out.push_back(r.negated());
    return out;
}

CVector CartanDatum::diagonal_of(const AlgebraElement& h) const {
    return (conj_inv * algebra->to_matrix(h) * conj).diagonal();
}

AlgebraElement CartanDatum::element_from_diagonal(const CVector& diag) const {
    return algebra->from_matrix(conj * diag.asDiagonal() * conj_inv, Field::complex);
}

CVector CartanDatum::root_on_basis(const Root& r) const {
    CVector v(rank());
    for (int k = 0; k < rank(); ++k) {
        // H_k has diagonal e_k - e_{k+1}
        double val = 0;
        if (r.i == k) val += 1;
        if (r.i == k + 1) val -= 1;
        if (r.j == k) val -= 1;
        if (r.j == k + 1) val += 1;
        v(k) = val;
    }
    return v;
}

std::vector<int> chamber_order(const CVector& values) {
    const Eigen::Index n = values.size();
    const double scale = std::max(1e-300, values.cwiseAbs().maxCoeff());
    const double tie = 1e-12 * scale;
    std::vector<int> order(static_cast<size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k)
        order[static_cast<size_t>(k)] = static_cast<int>(k);
    auto before = [&](int a, int b) {
        const Complex va = values(a), vb = values(b);
        if (std::abs(va.real() - vb.real()) > tie)
            return va.real() > vb.real();
        return va.imag() > vb.imag();
    };
    // insertion sort: n <= 6 and the tolerant comparator is not a strict weak order
    for (size_t a = 1; a < order.size(); ++a)
        for (size_t b = a; b > 0 && before(order[b], order[b - 1]); --b)
            std::swap(order[b], order[b - 1]);
    return order;
}

namespace {

CartanDatum assemble(const AlgebraPtr& algebra, const CMatrix& conj) {
    const int n = algebra->matrix_size();
    CartanDatum c;
    c.algebra = algebra;
    c.conj = conj;
    c.conj_inv = conj.inverse();
    for (int k = 0; k + 1 < n; ++k) {
        CVector d = CVector::Zero(n);
        d(k) = 1.0;
        d(k + 1) = -1.0;
        c.basis.push_back(c.element_from_diagonal(d));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            c.positive.push_back({i, j});
    for (const auto& r : c.positive)
        c.roots.push_back(r);
    for (const auto& r : c.positive)
        c.roots.push_back(r.negated());
    for (const auto& r : c.roots) {
        CMatrix e = CMatrix::Zero(n, n);
        e(r.i, r.j) = 1.0;
        c.root_vectors.push_back(algebra->from_matrix(conj * e * c.conj_inv, Field::complex));
    }
    c.weyl = WeylGroup::type_a(n);
    return c;
}

} // namespace

CartanDatum standard_cartan(const AlgebraPtr& algebra) {
    const int n = algebra->matrix_size();
    return assemble(algebra, CMatrix::Identity(n, n));
}

CartanDatum cartan_of(const AlgebraPtr& algebra, const AlgebraElement& x) {
    if (!algebra->is_regular_semisimple(x))
        fail(ErrorCode::not_regular, "cartan_of requires a regular semisimple element");
    Eigen::ComplexEigenSolver<CMatrix> es(algebra->to_matrix(x));
    const auto order = chamber_order(es.eigenvalues());
    const int n = algebra->matrix_size();
    CMatrix p(n, n);
    for (int k = 0; k < n; ++k)
        p.col(k) = es.eigenvectors().col(order[static_cast<size_t>(k)]).normalized();
    return assemble(algebra, p);
}

std::optional<CartanReduction> reduce_to_cartan(const AlgebraPtr& algebra, const AlgebraElement& x,
                                                const CartanDatum& target) {
    if (!is_identity(target.conj))
        fail(ErrorCode::unsupported, "reduce_to_cartan only targets the standard Cartan subalgebra");
    if (x.field != Field::real)
        fail(ErrorCode::invalid_argument, "reduce_to_cartan expects an element of the real form");
    if (!algebra->is_regular_semisimple(x))
        fail(ErrorCode::not_regular, "reduce_to_cartan requires a regular semisimple element");

    const int n = algebra->matrix_size();
    const CMatrix m = algebra->to_matrix(x);
    CartanReduction out;

    const double offdiag = (m - CMatrix(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
    CMatrix p(n, n);
    CVector values(n);
    if (offdiag == 0.0) {
        p.setIdentity();
        values = m.diagonal();
    } else if (algebra->family() == Family::su) {
        const CMatrix h = Complex(0, -1) * m;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
        p = es.eigenvectors();
        values = Complex(0, 1) * es.eigenvalues().cast<Complex>();
    } else {
        Eigen::EigenSolver<Matrix> es(m.real());
        const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
        if (es.eigenvalues().imag().cwiseAbs().maxCoeff() > 1e-12 * scale)
            return std::nullopt;
        p = es.eigenvectors().real().cast<Complex>();
        values = es.eigenvalues().real().cast<Complex>();
    }

    const auto order = chamber_order(values);
    CMatrix q(n, n);
    out.diagonal.resize(n);
    bool sorted = true;
    for (int k = 0; k < n; ++k) {
        const int src = order[static_cast<size_t>(k)];
        sorted = sorted && src == k;
        q.col(k) = p.col(src).normalized();
        out.diagonal(k) = values(src);
    }
    if (offdiag == 0.0 && sorted) {
        q.setIdentity();
    } else {
        // unit determinant: real rescaling for sl(n,R), a phase for su(n)
        const Complex det = q.determinant();
        if (algebra->family() == Family::sl_real) {
            if (det.real() < 0)
                q.col(0) *= -1.0;
            q /= std::pow(std::abs(det), 1.0 / n);
        } else {
            q.col(0) *= std::conj(det) / std::abs(det);
        }
    }
    out.g = q.inverse();
    if (algebra->family() == Family::sl_real) {
        out.diagonal = out.diagonal.real().cast<Complex>();
        out.g = out.g.real().cast<Complex>();
    } else {
        out.diagonal = Complex(0, 1) * out.diagonal.imag().cast<Complex>();
    }
    out.reduced = algebra->from_matrix(CMatrix(out.diagonal.asDiagonal()), Field::real);
    return out;
}

} // namespace orbitloc
