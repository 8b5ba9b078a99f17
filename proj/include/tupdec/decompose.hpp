#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tupdec/fingerprint.hpp"
#include "tupdec/matrix.hpp"
#include "tupdec/rng.hpp"

namespace tupdec {

struct IrreducibleClass {
    MatrixTuple representative;
    int multiplicity = 0;
    Fingerprint fingerprint; // at the class prefilter length
};

// T = U* (direct sum over classes of multiplicity (x) representative) U,
// classes ordered by descending multiplicity, then ascending dimension,
// then lexicographic fingerprint key.  The residual is
// max_j ||U T_j U* - blockform_j||_F and stays below 1e-7 relative.
struct PrimeDecomposition {
    std::vector<IrreducibleClass> classes;
    CMatrix global_unitary;
    double residual = 0.0;
};

// Word length used for class prefiltering and class keys.
inline constexpr int kClassFingerprintLen = 4;

// One round of randomized commutant splitting: sample a Hermitian element
// of the commutant, cut its spectrum at relative gaps, and compress T to
// the eigenspaces.  Returns at least two (isometry, subtuple) parts,
// ordered smallest dimension first.  Throws SplitFailedError when eight
// samples in a row stay within cluster tolerance of a scalar (or when T
// is irreducible, violating the precondition).
std::vector<std::pair<CMatrix, MatrixTuple>> split_once(const MatrixTuple& t, double tol,
                                                        Rng& rng);

// Full prime decomposition.  Deterministic for fixed (T, tol, seed); the
// class multiset {(dim, multiplicity)} does not depend on the seed.
PrimeDecomposition prime_decompose(const MatrixTuple& t, double tol, std::uint64_t seed);

// Compression of T to the range of a reducing orthogonal projection P.
// Throws NotReducingError when P is not a projection commuting with the
// tuple at the tolerance.  restrict(T, I) returns T itself.
MatrixTuple restrict(const MatrixTuple& t, const CMatrix& p, double tol);

// Fingerprint key -> multiplicity.  Key collisions between distinct
// classes get a deterministic "#2", "#3" suffix in class order.
std::map<std::string, int> multiplicity_function(const PrimeDecomposition& d);

} // namespace tupdec
