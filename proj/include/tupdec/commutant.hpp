#pragma once

#include <vector>

#include "tupdec/matrix.hpp"

namespace tupdec {

// Orthonormal basis of the *-intertwiner space
//   { X : X A_j = B_j X  and  X A_j* = B_j* X,  j = 1..k }.
// X maps the space A acts on (dimension n) into the space B acts on
// (dimension m), so the basis elements are m x n.
struct IntertwinerBasis {
    int source_dim = 0;
    int target_dim = 0;
    std::vector<CMatrix> basis;
};

// Production route.  The solution space is invariant under the spectral
// block structure of any Hermitian *-polynomial evaluated on the tuples,
// so we restrict the stacked linear map to the blocks cut out by a fixed
// seeded polynomial before solving.  This computes the same nullspace as
// the dense route (restriction provably loses no solutions) at a fraction
// of the cost for inflated tuples.
IntertwinerBasis intertwiner_basis(const MatrixTuple& a, const MatrixTuple& b, double tol);

// Reference route: the stacked map on all m*n coordinates, solved through
// the eigendecomposition of its Gram matrix.  Kept for tests and the
// benchmark; cost grows like (m*n)^3.
IntertwinerBasis intertwiner_basis_dense(const MatrixTuple& a, const MatrixTuple& b, double tol);

std::vector<CMatrix> commutant_basis(const MatrixTuple& t, double tol);

// dim of the commutant of T; equals sum of squared multiplicities over the
// irreducible classes of T.
int commutant_dimension(const MatrixTuple& t, double tol);

// Commutant dimension 1.
bool is_irreducible(const MatrixTuple& t, double tol);

} // namespace tupdec
