#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tupdec/matrix.hpp"

namespace tupdec {

// Finite model of a direct integral over a purely atomic measure space:
// every atom carries an irreducible tuple and a multiplicity. Atoms of
// weight zero are null and ignored by every operation; only the
// null/non-null distinction of the weights matters.

struct Atom {
    std::string id;
    double weight = 0.0;
};

struct AtomicMeasureSpace {
    std::vector<Atom> atoms; // ids unique, weights finite and nonnegative
};

// Multiplicity sentinel for "countably infinite". It survives matching as
// a distinct symbol (equal only to itself) and is replaced by the cap when
// a field is assembled into a concrete tuple.
inline constexpr int kInfMult = -1;

struct Section {
    MatrixTuple tuple;
    int mult = 1; // >= 1, or kInfMult
};

struct MatrixField {
    AtomicMeasureSpace space;
    std::vector<Section> sections; // parallel to space.atoms
};

struct Violation {
    enum class Kind {
        Reducible,      // a non-null section fails irreducibility
        EquivalentPair, // two non-null sections are unitarily equivalent
    };
    Kind kind;
    std::vector<std::string> atom_ids;
};

struct Matching {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::vector<double> residuals; // per pair, worst coordinate alignment residual
};

// Checks the two structural conditions on non-null atoms: each section
// irreducible, all pairs inequivalent. Violations are data, not errors.
std::vector<Violation> validate_field(const MatrixField& f, double tol, std::uint64_t seed);

// Direct sum over non-null atoms in ascending id order of mult copies of
// each section; kInfMult becomes m_cap. Requires a valid field.
MatrixTuple assemble(const MatrixField& f, int m_cap);

// Bijection between the non-null atoms of two valid fields pairing
// unitarily equivalent sections of equal multiplicity, or nullopt if none
// exists. Null atoms are unconstrained on both sides.
std::optional<Matching> match_fields(const MatrixField& f1, const MatrixField& f2, double tol,
                                     std::uint64_t seed);

// Same search, but reports why no matching exists.
struct MatchOutcome {
    std::optional<Matching> matching;
    std::string reason; // empty when matching is present
};
MatchOutcome match_fields_detailed(const MatrixField& f1, const MatrixField& f2, double tol,
                                   std::uint64_t seed);

} // namespace tupdec
