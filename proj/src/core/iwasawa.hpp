// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "core/algebra.hpp"

namespace orbitloc {

struct RestrictedRoot {
    Vector values; // on the a_R basis
    Matrix space;  // columns: real coordinates spanning the root space in g_R
};

/// Cartan involution and the subspaces of g_R = k + a + n.
/// Subspaces are given as matrices whose columns are real basis coordinates.
struct IwasawaDatum {
    Matrix theta;
    Matrix k;
    Matrix p;
    Matrix a;
    Matrix m;
    Matrix n;
    std::vector<RestrictedRoot> roots;
    std::vector<size_t> positive; // indices into roots
};

/// Compact form U_R = SU(n), so theta(X) = -X^dagger restricted to g_R.
/// For sl(n,R) a_R is the traceless diagonal, the positive restricted roots are
/// e_i - e_j (i < j) and n_R sums the negative root spaces (strictly lower triangular).
IwasawaDatum iwasawa(const AlgebraPtr& algebra);

/// Dimension of the real span of the given columns.
int real_rank(const Matrix& columns, double tol = 1e-10);

/// Basis (columns) of the span of all brackets [u, v], u in lhs, v in rhs.
Matrix bracket_span(const AlgebraSpec& algebra, const Matrix& lhs, const Matrix& rhs);

} // namespace orbitloc
