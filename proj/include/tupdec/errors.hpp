#pragma once

#include <stdexcept>
#include <string>

namespace tupdec {

// Failure taxonomy for the whole library.  The CLI maps these onto exit
// codes: ParseError -> 2, KMismatchError -> 4, every other Error -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input document is malformed (bad JSON, ragged arrays, non-finite entries).
struct ParseError : Error { using Error::Error; };

// Two tuples that must share the same number of components do not.
struct KMismatchError : Error { using Error::Error; };

// Matrix handed to the Hermitian eigensolver fails the symmetry check.
struct NotHermitianError : Error { using Error::Error; };

// Jacobi sweep budget exhausted before the off-diagonal mass vanished.
struct NoConvergenceError : Error { using Error::Error; };

// Randomized commutant splitting produced no usable block structure.
struct SplitFailedError : Error { using Error::Error; };

// A verdict fell into the ambiguous band between the working tolerance
// and the coarse decision threshold; refusing to guess.
struct ToleranceConflictError : Error { using Error::Error; };

// Alleged reducing projection is not one at the working tolerance.
struct NotReducingError : Error { using Error::Error; };

// Operation requires irreducible operands.
struct NotIrreducibleError : Error { using Error::Error; };

// Word enumeration would exceed the fingerprint budget.
struct WordBudgetError : Error { using Error::Error; };

// Field has no atom of positive weight.
struct EmptyFieldError : Error { using Error::Error; };

// Structural misuse of an operation (zero inflation, dimension mismatch).
struct InvalidArgumentError : Error { using Error::Error; };

} // namespace tupdec
