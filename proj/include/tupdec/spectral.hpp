#pragma once

#include <vector>

#include "tupdec/eig.hpp"
#include "tupdec/matrix.hpp"

namespace tupdec {

// Singular-value machinery built on the Hermitian eigensolver applied to
// M*M, which keeps the whole library on a single factorization primitive.

// Singular values, descending.
std::vector<double> singular_values(const CMatrix& m);

double spectral_norm(const CMatrix& m);

struct NullspaceResult {
    CMatrix basis;             // cols x d, orthonormal columns
    std::vector<double> sigma; // all singular values, ascending
    double threshold;          // sigma at or below this counted as zero
};

// Orthonormal basis of {v : Mv = 0} at the rank threshold
// tol * max(rows, cols) * sigma_max.
NullspaceResult nullspace(const CMatrix& m, double tol);

// |T| = (T*T)^(1/2), Hermitian positive semidefinite.  Eigenvalues of
// T*T that round below zero are clamped.
CMatrix absolute_value(const CMatrix& t);

// B(T) = T (I + |T|)^(-1).  Contractive: every singular value becomes
// sigma/(1+sigma) < 1.  Equivariant under unitary conjugation.
CMatrix b_transform(const CMatrix& t);

} // namespace tupdec
