// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/algebra.hpp"

namespace orbitloc {

/// Root e_i - e_j of type A_{n-1}. Roots act on the diagonal coordinates x of a
/// Cartan element written as P diag(x) P^{-1}: alpha(x) = x_i - x_j.
struct Root {
    int i = 0;
    int j = 0;

    Complex operator()(const CVector& diag) const { return diag(i) - diag(j); }
    Vector epsilon(int n) const;
    Root negated() const { return {j, i}; }
    bool operator==(const Root&) const = default;
    auto operator<=>(const Root&) const = default;
};

/// Weyl group element acting on t* by permuting epsilon coordinates:
/// (w mu)_{perm[k]} = mu_k.
struct WeylElement {
    std::vector<int> perm;
    Matrix action;      // n x n permutation matrix on epsilon coordinates
    std::string label;  // reduced word in simple reflections, "e" for the identity
    int sign = 1;       // det of the action on t*

    CVector apply(const CVector& mu) const;
    Root apply(const Root& r) const { return {perm[static_cast<size_t>(r.i)], perm[static_cast<size_t>(r.j)]}; }
    size_t length() const;
};

class WeylGroup {
public:
    /// Breadth-first closure over simple reflections of type A_{n-1}.
    /// Elements are ordered shortlex by reduced word; duplicates are detected from
    /// the action matrix rounded to 1e-9.
    static WeylGroup type_a(int n);

    const std::vector<WeylElement>& elements() const { return elements_; }
    size_t order() const { return elements_.size(); }
    const WeylElement& find(const std::string& label) const;
    /// Index of w1 * w2, or npos if the product is not a stored element.
    size_t compose(size_t a, size_t b) const;
    static constexpr size_t npos = static_cast<size_t>(-1);

private:
    std::vector<WeylElement> elements_;
};

struct CartanDatum {
    AlgebraPtr algebra;
    CMatrix conj;      // P: Cartan = { P diag(x) P^{-1} }
    CMatrix conj_inv;
    std::vector<AlgebraElement> basis;       // P H_k P^{-1}, complex coordinates
    std::vector<Root> roots;                 // all roots
    std::vector<AlgebraElement> root_vectors;
    std::vector<Root> positive;              // e_i - e_j with i < j
    WeylGroup weyl;

    int rank() const { return static_cast<int>(basis.size()); }
    std::vector<Root> negative() const;
    /// Diagonal coordinates of an element of this Cartan.
    CVector diagonal_of(const AlgebraElement& h) const;
    AlgebraElement element_from_diagonal(const CVector& diag) const;
    /// Values of a root on the Cartan basis.
    CVector root_on_basis(const Root& r) const;
};

/// Diagonal Cartan of the realization (maximally split for sl(n,R), maximal torus for su(n)).
CartanDatum standard_cartan(const AlgebraPtr& algebra);

/// Centralizer of a regular semisimple element, with its root data.
CartanDatum cartan_of(const AlgebraPtr& algebra, const AlgebraElement& x);

struct CartanReduction {
    CMatrix g;           // conjugating matrix: x' = g x g^{-1}, det g = 1
    CVector diagonal;    // canonical (chamber) order
    AlgebraElement reduced;
};

/// Conjugates x into the standard Cartan by an element of G_R.
/// Returns std::nullopt when x is not G_R-conjugate into it (sl(n,R) with non-real spectrum).
/// Throws not_regular for non-regular input.
std::optional<CartanReduction> reduce_to_cartan(const AlgebraPtr& algebra, const AlgebraElement& x,
                                                const CartanDatum& target);

/// Canonical chamber order on eigenvalues: decreasing real part, ties broken by decreasing imaginary part.
std::vector<int> chamber_order(const CVector& values);

} // namespace orbitloc
