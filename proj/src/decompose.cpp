#include "tupdec/decompose.hpp"

#include <algorithm>
#include <cmath>

#include "tupdec/commutant.hpp"
#include "tupdec/eig.hpp"
#include "tupdec/equivalence.hpp"

namespace tupdec {

namespace {

constexpr int kMaxSplitAttempts = 8;
constexpr double kPrefilterGap = 1e-6;

double cluster_eps(double tol) { return std::max(1e-6, 100.0 * tol); }

// Random Hermitian element of the commutant spanned by the given
// orthonormal basis: standard normal weights on the Hermitian and
// anti-Hermitian parts of each element.
CMatrix sample_commutant_element(const std::vector<CMatrix>& basis, Rng& rng) {
    const int n = basis.front().rows;
    CMatrix h(n, n);
    for (const CMatrix& e : basis) {
        const double g = rng.gauss();
        const double w = rng.gauss();
        const CMatrix eh = adjoint(e);
        // g * (E + E*)/2 + w * (E - E*)/(2i)
        h = add(h, add(scale(0.5 * g, add(e, eh)), scale(cplx(0.0, -0.5 * w), sub(e, eh))));
    }
    return hermitize(h);
}

struct SplitParts {
    std::vector<std::pair<CMatrix, MatrixTuple>> parts;
};

// Split against a precomputed commutant basis so the recursion does not
// compute it twice per node.
SplitParts split_with_basis(const MatrixTuple& t, const std::vector<CMatrix>& basis, double tol,
                            Rng& rng) {
    if (basis.size() <= 1)
        throw SplitFailedError("tuple is irreducible; nothing to split");
    const double eps = cluster_eps(tol);
    for (int attempt = 0; attempt < kMaxSplitAttempts; ++attempt) {
        const CMatrix h = sample_commutant_element(basis, rng);
        EigResult eig = hermitian_eig(h, 0.0);
        const double lo = eig.values.front();
        const double hi = eig.values.back();
        const double spread = hi - lo;
        if (spread <= eps * (1.0 + std::max(std::abs(lo), std::abs(hi))))
            continue; // sampled element is scalar at cluster tolerance
        std::vector<int> starts{0};
        for (int i = 1; i < t.n; ++i)
            if (eig.values[i] - eig.values[i - 1] > eps * spread)
                starts.push_back(i);
        if (starts.size() < 2)
            continue;
        starts.push_back(t.n);
        SplitParts out;
        for (std::size_t c = 0; c + 1 < starts.size(); ++c) {
            const int d = starts[c + 1] - starts[c];
            CMatrix v(t.n, d);
            for (int j = 0; j < d; ++j)
                for (int i = 0; i < t.n; ++i)
                    v(i, j) = eig.vectors(i, starts[c] + j);
            out.parts.emplace_back(std::move(v), compress_tuple(v, t));
        }
        std::stable_sort(out.parts.begin(), out.parts.end(),
                         [](const auto& x, const auto& y) { return x.second.n < y.second.n; });
        return out;
    }
    throw SplitFailedError("no usable commutant element after 8 samples");
}

struct Leaf {
    CMatrix isometry; // from the root space into the leaf subspace
    MatrixTuple tup;
};

void decompose_rec(const MatrixTuple& sub, const CMatrix& iso, std::uint64_t key, double tol,
                   std::vector<Leaf>& leaves) {
    const std::vector<CMatrix> basis = commutant_basis(sub, tol);
    if (basis.size() == 1) {
        leaves.push_back({iso, sub});
        return;
    }
    Rng sampler(key);
    SplitParts sp = split_with_basis(sub, basis, tol, sampler);
    // Depth first, smallest block first; child streams keyed by the node
    // key and the child index, independent of sampling above.
    for (std::size_t i = 0; i < sp.parts.size(); ++i) {
        const Rng child = Rng(key).child(std::uint64_t(i));
        decompose_rec(sp.parts[i].second, matmul(iso, sp.parts[i].first), child.key(), tol,
                      leaves);
    }
}

struct ClassBuild {
    MatrixTuple rep;
    Fingerprint fp;
    std::string key;
    std::vector<std::pair<CMatrix, CMatrix>> copies; // (isometry, aligner onto rep)
};

} // namespace

std::vector<std::pair<CMatrix, MatrixTuple>> split_once(const MatrixTuple& t, double tol,
                                                        Rng& rng) {
    const std::vector<CMatrix> basis = commutant_basis(t, tol);
    return split_with_basis(t, basis, tol, rng).parts;
}

PrimeDecomposition prime_decompose(const MatrixTuple& t, double tol, std::uint64_t seed) {
    PrimeDecomposition out;
    if (commutant_dimension(t, tol) == 1) {
        IrreducibleClass cls;
        cls.representative = t;
        cls.multiplicity = 1;
        cls.fingerprint = word_fingerprint(t, kClassFingerprintLen);
        out.classes.push_back(std::move(cls));
        out.global_unitary = CMatrix::identity(t.n);
        out.residual = 0.0;
        return out;
    }

    std::vector<Leaf> leaves;
    decompose_rec(t, CMatrix::identity(t.n), Rng(seed).key(), tol, leaves);

    std::vector<ClassBuild> classes;
    for (Leaf& leaf : leaves) {
        Fingerprint fp = word_fingerprint(leaf.tup, kClassFingerprintLen);
        bool placed = false;
        for (ClassBuild& cls : classes) {
            if (cls.rep.n != leaf.tup.n)
                continue;
            if (fingerprint_distance(cls.fp, fp) > kPrefilterGap)
                continue;
            AlignResult ar = align_irreducibles(leaf.tup, cls.rep, tol);
            if (ar.ambiguous)
                throw ToleranceConflictError("class grouping fell into the ambiguity band");
            if (!ar.unitary)
                continue;
            cls.copies.emplace_back(std::move(leaf.isometry), *ar.unitary);
            placed = true;
            break;
        }
        if (!placed) {
            ClassBuild cls;
            cls.rep = std::move(leaf.tup);
            cls.key = fingerprint_key(fp);
            cls.fp = std::move(fp);
            cls.copies.emplace_back(std::move(leaf.isometry), CMatrix::identity(cls.rep.n));
            classes.push_back(std::move(cls));
        }
    }

    std::stable_sort(classes.begin(), classes.end(), [](const ClassBuild& x, const ClassBuild& y) {
        if (x.copies.size() != y.copies.size())
            return x.copies.size() > y.copies.size();
        if (x.rep.n != y.rep.n)
            return x.rep.n < y.rep.n;
        return x.key < y.key;
    });

    // Columns of V: per class, per copy, the isometry rotated onto the
    // representative; then T V = V blockform and U = V*.
    CMatrix v(t.n, t.n);
    int off = 0;
    std::vector<MatrixTuple> blocks;
    for (ClassBuild& cls : classes) {
        for (auto& [iso, aligner] : cls.copies) {
            const CMatrix w = matmul(iso, adjoint(aligner));
            for (int j = 0; j < cls.rep.n; ++j)
                for (int i = 0; i < t.n; ++i)
                    v(i, off + j) = w(i, j);
            off += cls.rep.n;
        }
        blocks.push_back(inflate(cls.rep, int(cls.copies.size())));
    }
    const MatrixTuple blockform = direct_sum(blocks);
    out.global_unitary = adjoint(v);
    double residual = 0.0;
    for (int j = 0; j < t.k; ++j)
        residual = std::max(residual,
                            frob_norm(sub(conjugate(out.global_unitary, t.t[j]), blockform.t[j])));
    out.residual = residual;
    if (residual > 1e-7 * (1.0 + max_frob(t)))
        throw NoConvergenceError("decomposition residual did not meet the contract");

    for (ClassBuild& cls : classes) {
        IrreducibleClass ic;
        ic.representative = std::move(cls.rep);
        ic.multiplicity = int(cls.copies.size());
        ic.fingerprint = std::move(cls.fp);
        out.classes.push_back(std::move(ic));
    }
    return out;
}

MatrixTuple restrict(const MatrixTuple& t, const CMatrix& p, double tol) {
    if (p.rows != t.n || p.cols != t.n)
        throw InvalidArgumentError("projection shape does not match the tuple");
    if (frob_norm(sub(p, adjoint(p))) > tol * (1.0 + frob_norm(p)))
        throw NotReducingError("projection is not Hermitian at the tolerance");
    if (frob_norm(sub(matmul(p, p), p)) > tol * (1.0 + frob_norm(p)))
        throw NotReducingError("matrix is not idempotent at the tolerance");
    for (int j = 0; j < t.k; ++j) {
        const double defect = frob_norm(sub(matmul(p, t.t[j]), matmul(t.t[j], p)));
        if (defect > tol * (1.0 + frob_norm(t.t[j])))
            throw NotReducingError("projection does not commute with the tuple");
    }
    EigResult eig = hermitian_eig(hermitize(p), 0.0);
    int rank = 0;
    for (double v : eig.values)
        if (v > 0.5)
            ++rank;
    if (rank == 0)
        throw NotReducingError("projection has rank zero");
    if (rank == t.n)
        return t;
    CMatrix v(t.n, rank);
    int col = 0;
    for (int i = 0; i < t.n; ++i) {
        if (eig.values[i] > 0.5) {
            for (int r = 0; r < t.n; ++r)
                v(r, col) = eig.vectors(r, i);
            ++col;
        }
    }
    return compress_tuple(v, t);
}

std::map<std::string, int> multiplicity_function(const PrimeDecomposition& d) {
    std::map<std::string, int> out;
    for (const IrreducibleClass& cls : d.classes) {
        std::string key = fingerprint_key(cls.fingerprint);
        int suffix = 2;
        while (out.count(key))
            key = fingerprint_key(cls.fingerprint) + "#" + std::to_string(suffix++);
        out.emplace(std::move(key), cls.multiplicity);
    }
    return out;
}

} // namespace tupdec
