#pragma once

// Seeded generators for randomized suites. Everything is driven by a
// tupdec::Rng so a failing trial is reproducible from its seed alone.

#include <utility>
#include <vector>

#include "oracle.hpp"
#include "tupdec/matrix.hpp"
#include "tupdec/rng.hpp"

namespace gen {

using tupdec::CMatrix;
using tupdec::cplx;
using tupdec::MatrixTuple;
using tupdec::Rng;

inline CMatrix random_matrix(int rows, int cols, Rng& rng, double amp = 1.0) {
    CMatrix m(rows, cols);
    for (cplx& v : m.a)
        v = amp * rng.cgauss();
    return m;
}

// Modified Gram-Schmidt with one re-orthogonalization pass.
inline CMatrix random_unitary(int n, Rng& rng) {
    CMatrix q = random_matrix(n, n, rng);
    for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < j; ++i) {
                cplx proj = 0.0;
                for (int r = 0; r < n; ++r)
                    proj += std::conj(q(r, i)) * q(r, j);
                for (int r = 0; r < n; ++r)
                    q(r, j) -= proj * q(r, i);
            }
            double nrm = 0.0;
            for (int r = 0; r < n; ++r)
                nrm += std::norm(q(r, j));
            nrm = std::sqrt(nrm);
            for (int r = 0; r < n; ++r)
                q(r, j) /= nrm;
        }
    }
    return q;
}

inline MatrixTuple random_tuple(int k, int n, Rng& rng, double amp = 1.0) {
    std::vector<CMatrix> mats;
    for (int j = 0; j < k; ++j)
        mats.push_back(random_matrix(n, n, rng, amp));
    return tupdec::make_tuple(std::move(mats));
}

inline MatrixTuple random_irreducible(int k, int n, Rng& rng, double tol = 1e-9) {
    for (;;) {
        MatrixTuple t = random_tuple(k, n, rng);
        if (oracle::is_irreducible(t, tol))
            return t;
    }
}

// Pairwise inequivalent irreducibles of the requested dimensions,
// certified by the stacked-equation oracle.
inline std::vector<MatrixTuple> inequivalent_family(int k, const std::vector<int>& dims, Rng& rng,
                                                    double tol = 1e-9) {
    std::vector<MatrixTuple> out;
    for (int n : dims) {
        for (;;) {
            MatrixTuple cand = random_irreducible(k, n, rng, tol);
            bool fresh = true;
            for (const MatrixTuple& prev : out)
                if (prev.n == cand.n && oracle::intertwiner_dim(prev, cand, tol) != 0)
                    fresh = false;
            if (fresh) {
                out.push_back(std::move(cand));
                break;
            }
        }
    }
    return out;
}

struct InflationInstance {
    MatrixTuple mixed;     // U (sum of inflations) U*
    MatrixTuple blockform; // the sum of inflations itself
    CMatrix unitary;
    std::vector<std::pair<int, int>> shape; // (dim, mult) per class
};

inline InflationInstance inflate_and_mix(const std::vector<MatrixTuple>& family,
                                         const std::vector<int>& mults, Rng& rng) {
    std::vector<MatrixTuple> parts;
    InflationInstance out;
    for (std::size_t i = 0; i < family.size(); ++i) {
        parts.push_back(tupdec::inflate(family[i], mults[i]));
        out.shape.emplace_back(family[i].n, mults[i]);
    }
    out.blockform = tupdec::direct_sum(parts);
    out.unitary = random_unitary(out.blockform.n, rng);
    out.mixed = tupdec::conjugate_tuple(out.unitary, out.blockform);
    return out;
}

} // namespace gen
