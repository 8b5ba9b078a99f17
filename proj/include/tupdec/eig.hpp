#pragma once

#include <vector>

#include "tupdec/matrix.hpp"

namespace tupdec {

// Eigendecomposition of a Hermitian matrix: H = Q diag(values) Q*, with
// values ascending and Q unitary (columns are eigenvectors).
struct EigResult {
    std::vector<double> values;
    CMatrix vectors;
};

// Jacobi eigensolver, round-robin ordered with OpenMP-parallel rotation
// application.  Deterministic for a fixed input: every entry update is a
// fixed formula over the pre-round state, so results do not depend on the
// thread count.  Throws NotHermitianError if the symmetry defect exceeds
// tol*(1+||H||_F), NoConvergenceError if the rotation budget (30*n^2) is
// exhausted first.
EigResult hermitian_eig(const CMatrix& h, double tol);

// Classic cyclic Jacobi (sequential sweeps over p<q).  Reference
// implementation kept for testing and benchmarking against the parallel
// kernel; same contract.
EigResult hermitian_eig_serial(const CMatrix& h, double tol);

} // namespace tupdec
