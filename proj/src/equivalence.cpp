#include "tupdec/equivalence.hpp"

#include <cmath>

#include "tupdec/commutant.hpp"
#include "tupdec/decompose.hpp"

namespace tupdec {

namespace {

constexpr double kCoarseReject = 1e-4;
constexpr double kScalarDefectBound = 1e-8;
constexpr double kPrefilterGap = 1e-6;

} // namespace

AlignResult align_irreducibles(const MatrixTuple& a, const MatrixTuple& b, double tol) {
    AlignResult res;
    IntertwinerBasis ib = intertwiner_basis(a, b, tol);
    res.dim = int(ib.basis.size());
    if (res.dim == 0)
        return res;
    if (res.dim > 1 || a.n != b.n) {
        // Schur's dichotomy rules this out for genuinely irreducible
        // operands; refuse to guess.
        res.ambiguous = true;
        return res;
    }
    const CMatrix& x = ib.basis[0];
    const CMatrix gram = matmul(adjoint(x), x);
    cplx tr = 0.0;
    for (int i = 0; i < a.n; ++i)
        tr += gram(i, i);
    const double c = tr.real() / a.n;
    CMatrix defect = gram;
    for (int i = 0; i < a.n; ++i)
        defect(i, i) -= c;
    res.scalar_defect = frob_norm(defect);
    if (res.scalar_defect > kScalarDefectBound || c <= 0.0) {
        res.ambiguous = true;
        return res;
    }
    const CMatrix u = scale(1.0 / std::sqrt(c), x);
    double worst = 0.0;
    bool ok = true;
    for (int j = 0; j < a.k; ++j) {
        const double rj = frob_norm(sub(conjugate(u, a.t[j]), b.t[j]));
        worst = std::max(worst, rj);
        if (rj > 10.0 * tol * (1.0 + frob_norm(a.t[j])))
            ok = false;
    }
    res.residual = worst;
    if (ok) {
        res.unitary = u;
    } else if (worst < kCoarseReject) {
        res.ambiguous = true;
    }
    return res;
}

std::optional<CMatrix> unitary_between_irreducibles(const MatrixTuple& a, const MatrixTuple& b,
                                                    double tol) {
    if (a.k != b.k)
        throw KMismatchError("tuples have different component counts");
    if (!is_irreducible(a, tol) || !is_irreducible(b, tol))
        throw NotIrreducibleError("operands must both be irreducible");
    return align_irreducibles(a, b, tol).unitary;
}

DecompositionMatch match_decompositions(const PrimeDecomposition& a, const PrimeDecomposition& b,
                                        double tol) {
    DecompositionMatch out;
    std::vector<bool> used(b.classes.size(), false);
    bool mult_ok = true;
    for (std::size_t i = 0; i < a.classes.size(); ++i) {
        const IrreducibleClass& c1 = a.classes[i];
        bool found = false;
        for (std::size_t j = 0; j < b.classes.size(); ++j) {
            const IrreducibleClass& c2 = b.classes[j];
            if (used[j] || c1.representative.n != c2.representative.n)
                continue;
            if (fingerprint_distance(c1.fingerprint, c2.fingerprint) > kPrefilterGap)
                continue;
            AlignResult ar = align_irreducibles(c1.representative, c2.representative, tol);
            if (ar.ambiguous)
                throw ToleranceConflictError("class comparison fell into the ambiguity band");
            if (!ar.unitary)
                continue;
            used[j] = true;
            found = true;
            out.pairs.push_back({int(i), int(j), ar.residual});
            if (c1.multiplicity != c2.multiplicity)
                mult_ok = false;
            break;
        }
        if (!found)
            out.unmatched_a.push_back(int(i));
    }
    for (std::size_t j = 0; j < b.classes.size(); ++j)
        if (!used[j])
            out.unmatched_b.push_back(int(j));
    out.bijective = out.unmatched_a.empty() && out.unmatched_b.empty();
    out.multiplicities_equal = mult_ok;
    return out;
}

bool are_equivalent(const MatrixTuple& t, const MatrixTuple& s, double tol, std::uint64_t seed) {
    if (t.k != s.k)
        throw KMismatchError("tuples have different component counts");
    if (t.n != s.n)
        return false;
    const PrimeDecomposition d1 = prime_decompose(t, tol, seed);
    const PrimeDecomposition d2 = prime_decompose(s, tol, seed);
    const DecompositionMatch m = match_decompositions(d1, d2, tol);
    return m.bijective && m.multiplicities_equal;
}

bool are_disjoint(const MatrixTuple& t, const MatrixTuple& s, double tol, std::uint64_t seed) {
    if (t.k != s.k)
        throw KMismatchError("tuples have different component counts");
    const PrimeDecomposition d1 = prime_decompose(t, tol, seed);
    const PrimeDecomposition d2 = prime_decompose(s, tol, seed);
    return match_decompositions(d1, d2, tol).pairs.empty();
}

} // namespace tupdec
