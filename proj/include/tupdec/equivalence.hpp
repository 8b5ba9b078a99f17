#pragma once

#include <cstdint>
#include <optional>

#include "tupdec/matrix.hpp"

namespace tupdec {

// Outcome of trying to align two tuples already known to be irreducible.
// When the intertwiner space is one-dimensional, Schur's dichotomy makes
// X*X scalar and X rescales to the aligning unitary; `ambiguous` flags
// every verdict that lands between the working tolerance and the coarse
// rejection threshold, where no honest answer exists.
struct AlignResult {
    int dim = 0;
    std::optional<CMatrix> unitary;
    double residual = 0.0;      // max_j ||U A_j U* - B_j||_F, valid when unitary
    double scalar_defect = 0.0; // ||X*X - (tr X*X / n) I||_F for the raw intertwiner
    bool ambiguous = false;
};

// Core alignment; assumes irreducibility of both operands was established
// by the caller.
AlignResult align_irreducibles(const MatrixTuple& a, const MatrixTuple& b, double tol);

// U with U A_j U* = B_j for irreducible tuples, or absent when no such
// unitary exists at the tolerance.  Throws NotIrreducibleError when either
// operand fails the irreducibility check.
std::optional<CMatrix> unitary_between_irreducibles(const MatrixTuple& a, const MatrixTuple& b,
                                                    double tol);

// Intertwiner-confirmed pairing between the classes of two prime
// decompositions.  Fingerprint distance only prunes candidates; every
// reported pair carries the residual of its aligning unitary.
struct ClassPairing {
    int a_index = 0;
    int b_index = 0;
    double residual = 0.0;
};
struct DecompositionMatch {
    std::vector<ClassPairing> pairs;
    std::vector<int> unmatched_a;
    std::vector<int> unmatched_b;
    bool bijective = false;
    bool multiplicities_equal = false; // over the paired classes
};
struct PrimeDecomposition;
DecompositionMatch match_decompositions(const PrimeDecomposition& a, const PrimeDecomposition& b,
                                        double tol);

// Unitary equivalence of arbitrary tuples, decided through their prime
// decompositions: equivalent iff the irreducible classes biject with equal
// multiplicities.  Throws KMismatchError when component counts differ.
bool are_equivalent(const MatrixTuple& t, const MatrixTuple& s, double tol, std::uint64_t seed);

// No irreducible class in common.
bool are_disjoint(const MatrixTuple& t, const MatrixTuple& s, double tol, std::uint64_t seed);

} // namespace tupdec
