#include "tupdec/commutant.hpp"

#include <algorithm>
#include <cmath>

#include "tupdec/eig.hpp"
#include "tupdec/rng.hpp"

namespace tupdec {

namespace {

void require_same_k(const MatrixTuple& a, const MatrixTuple& b) {
    if (a.k != b.k)
        throw KMismatchError("tuples have different component counts");
}

// Zero singular values of the stacked map, measured against its largest
// one.  The stacked map has 2k*m*n rows and m*n columns.
double rank_threshold(double tol, int k, int m, int n, double sigma_max) {
    return tol * (2.0 * k * double(m) * double(n)) * sigma_max;
}

// For nearly identical 1x1 tuples the stacked map is literally the
// difference of the tuples and its largest singular value collapses to
// the noise scale, so thresholds are measured against the tuples
// themselves as well.
double tuple_scale(const MatrixTuple& a, const MatrixTuple& b) {
    double s = 0.0;
    for (int j = 0; j < a.k; ++j)
        s = std::max(s, 0.5 * (frob_norm(a.t[j]) + frob_norm(b.t[j])));
    return s;
}

// Exact residual of the intertwining equations, computed without the
// Gram squaring.  Eigenvalues of S*S resolve singular values only down
// to sqrt(eps)*sigma_max, which sits right at the decision boundary for
// tight tolerances; applying the equations to a candidate directly
// recovers full precision.
double true_residual(const MatrixTuple& a, const MatrixTuple& b, const CMatrix& x) {
    double acc = 0.0;
    for (int j = 0; j < a.k; ++j) {
        double r0 = frob_norm(sub(matmul(x, a.t[j]), matmul(b.t[j], x)));
        double r1 = frob_norm(sub(matmul(x, adjoint(a.t[j])), matmul(adjoint(b.t[j]), x)));
        acc += r0 * r0 + r1 * r1;
    }
    return std::sqrt(acc);
}

// ---------------------------------------------------------------------
// Dense reference route.  With row-major vec(X) the stacked equations are
//   (I (x) A_j^T - B_j (x) I) x = 0        and the adjoint family,
// and the Gram matrix of the stack collapses to Kronecker terms:
//   G = sum_j [ I (x) (conj(A_j) A_j^T + A_j^T conj(A_j))
//             + (B_j* B_j + B_j B_j*) (x) I
//             - 2 (B_j (x) conj(A_j) + B_j* (x) A_j^T) ].

CMatrix dense_gram(const MatrixTuple& a, const MatrixTuple& b) {
    const int n = a.n;
    const int m = b.n;
    const int nm = n * m;
    std::vector<CMatrix> p(a.k), q(a.k);
    for (int j = 0; j < a.k; ++j) {
        CMatrix ca(n, n), at(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                ca(r, c) = std::conj(a.t[j](r, c));
                at(r, c) = a.t[j](c, r);
            }
        p[j] = add(matmul(ca, at), matmul(at, ca));
        const CMatrix bh = adjoint(b.t[j]);
        q[j] = add(matmul(bh, b.t[j]), matmul(b.t[j], bh));
    }
    CMatrix g(nm, nm);
#pragma omp parallel for schedule(static)
    for (int row = 0; row < nm; ++row) {
        const int r = row / n;
        const int c = row % n;
        for (int rp = 0; rp < m; ++rp) {
            for (int cp = 0; cp < n; ++cp) {
                cplx acc = 0.0;
                for (int j = 0; j < a.k; ++j) {
                    if (r == rp)
                        acc += p[j](c, cp);
                    if (c == cp)
                        acc += q[j](r, rp);
                    acc -= 2.0 * (b.t[j](r, rp) * std::conj(a.t[j](c, cp)) +
                                  std::conj(b.t[j](rp, r)) * a.t[j](cp, c));
                }
                g(row, std::size_t(rp) * n + cp) = acc;
            }
        }
    }
    return g;
}

IntertwinerBasis basis_from_gram(const MatrixTuple& a, const MatrixTuple& b, const CMatrix& gram,
                                 double tol) {
    const int n = a.n, m = b.n;
    EigResult eig = hermitian_eig(hermitize(gram), 0.0);
    const int nm = m * n;
    std::vector<double> sigma(nm);
    for (int i = 0; i < nm; ++i)
        sigma[i] = eig.values[i] > 0.0 ? std::sqrt(eig.values[i]) : 0.0;
    const double smax = std::max(sigma.empty() ? 0.0 : sigma.back(), tuple_scale(a, b));
    const double cut = rank_threshold(tol, a.k, m, n, smax);
    // Columns whose Gram singular value could be pure squaring noise are
    // judged by their exact equation residual instead.
    const double screen = std::max(cut, 1e-6 * smax);
    IntertwinerBasis out;
    out.source_dim = n;
    out.target_dim = m;
    for (int col = 0; col < nm && sigma[col] <= screen; ++col) {
        CMatrix x(m, n);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < n; ++c)
                x(r, c) = eig.vectors(std::size_t(r) * n + c, col);
        if (true_residual(a, b, x) <= cut)
            out.basis.push_back(std::move(x));
    }
    return out;
}

// ---------------------------------------------------------------------
// Compressed production route.

// Fixed seeded Hermitian *-polynomial (all words of length 1 and 2 over
// the letters T_j, T_j*) evaluated on a tuple.  The same coefficients are
// used for both tuples of an intertwiner problem, so any solution X
// satisfies X K_A = K_B X and is block-supported on matched eigenspaces.
CMatrix sample_poly(const MatrixTuple& t, const std::vector<double>& letter_scale) {
    Rng rng(0x6b5f3a2c9d1e4708ull);
    const int L = 2 * t.k;
    std::vector<CMatrix> letters(L);
    for (int j = 0; j < t.k; ++j) {
        letters[j] = scale(letter_scale[j], t.t[j]);
        letters[t.k + j] = adjoint(letters[j]);
    }
    CMatrix w(t.n, t.n);
    for (int i = 0; i < L; ++i)
        w = add(w, scale(rng.cgauss(), letters[i]));
    for (int i = 0; i < L; ++i)
        for (int l = 0; l < L; ++l)
            w = add(w, scale(rng.cgauss(), matmul(letters[i], letters[l])));
    return hermitize(w);
}

struct SpectralSide {
    std::vector<double> values;
    CMatrix q;
};

struct Cluster {
    std::vector<int> acols;
    std::vector<int> bcols;
};

// Merge the two spectra and cut where the gap exceeds the cluster
// tolerance.  True multiplets agree to roughly machine precision, far
// below the cut, so they are never split; merging distinct eigenvalues
// only enlarges the search space and cannot lose solutions.
std::vector<Cluster> joint_clusters(const SpectralSide& sa, const SpectralSide& sb) {
    struct Entry {
        double v;
        int side;
        int col;
    };
    std::vector<Entry> all;
    all.reserve(sa.values.size() + sb.values.size());
    for (std::size_t i = 0; i < sa.values.size(); ++i)
        all.push_back({sa.values[i], 0, int(i)});
    for (std::size_t i = 0; i < sb.values.size(); ++i)
        all.push_back({sb.values[i], 1, int(i)});
    std::stable_sort(all.begin(), all.end(), [](const Entry& x, const Entry& y) {
        if (x.v != y.v)
            return x.v < y.v;
        if (x.side != y.side)
            return x.side < y.side;
        return x.col < y.col;
    });
    double vmax = 0.0;
    for (const Entry& e : all)
        vmax = std::max(vmax, std::abs(e.v));
    const double eps = 1e-8 * (1.0 + vmax);
    std::vector<Cluster> out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (i == 0 || all[i].v - all[i - 1].v > eps)
            out.emplace_back();
        if (all[i].side == 0)
            out.back().acols.push_back(all[i].col);
        else
            out.back().bcols.push_back(all[i].col);
    }
    return out;
}

IntertwinerBasis compressed_basis(const MatrixTuple& a, const MatrixTuple& b, double tol) {
    const int n = a.n;
    const int m = b.n;
    const bool same = &a == &b;
    std::vector<double> letter_scale(a.k);
    for (int j = 0; j < a.k; ++j)
        letter_scale[j] = 1.0 / (1.0 + 0.5 * (frob_norm(a.t[j]) + frob_norm(b.t[j])));

    SpectralSide sa, sb;
    {
        EigResult ea = hermitian_eig(sample_poly(a, letter_scale), 0.0);
        sa.values = std::move(ea.values);
        sa.q = std::move(ea.vectors);
    }
    if (same) {
        sb = sa;
    } else {
        EigResult eb = hermitian_eig(sample_poly(b, letter_scale), 0.0);
        sb.values = std::move(eb.values);
        sb.q = std::move(eb.vectors);
    }

    const std::vector<Cluster> clusters = joint_clusters(sa, sb);

    // Unknowns: one complex coordinate per allowed block position of the
    // transformed intertwiner.  uid(r,c) < 0 marks a forced zero.
    std::vector<int> uid(std::size_t(m) * n, -1);
    int nu = 0;
    for (const Cluster& cl : clusters)
        for (int r : cl.bcols)
            for (int c : cl.acols)
                uid[std::size_t(r) * n + c] = nu++;

    IntertwinerBasis out;
    out.source_dim = n;
    out.target_dim = m;
    if (nu == 0)
        return out;

    // Per-row and per-column support lists for sparse assembly.
    std::vector<std::vector<int>> row_support(m), col_support(n);
    for (const Cluster& cl : clusters) {
        for (int r : cl.bcols)
            for (int c : cl.acols)
                row_support[r].push_back(c);
        for (int c : cl.acols)
            for (int r : cl.bcols)
                col_support[c].push_back(r);
    }

    MatrixTuple ta = compress_tuple(sa.q, a);
    MatrixTuple tb = same ? ta : compress_tuple(sb.q, b);

    CMatrix gram(nu, nu);
    std::vector<std::pair<int, cplx>> coef;
    for (int j = 0; j < a.k; ++j) {
        for (int form = 0; form < 2; ++form) {
            // form 0: X At_j - Bt_j X;  form 1: X At_j* - Bt_j* X.
            const CMatrix& ma = ta.t[j];
            const CMatrix& mb = tb.t[j];
            for (int r = 0; r < m; ++r) {
                for (int c = 0; c < n; ++c) {
                    coef.clear();
                    for (int cp : row_support[r]) {
                        const cplx v = form == 0 ? ma(cp, c) : std::conj(ma(c, cp));
                        coef.emplace_back(uid[std::size_t(r) * n + cp], v);
                    }
                    for (int rp : col_support[c]) {
                        const cplx v = form == 0 ? -mb(r, rp) : -std::conj(mb(rp, r));
                        coef.emplace_back(uid[std::size_t(rp) * n + c], v);
                    }
                    for (const auto& [u1, v1] : coef)
                        for (const auto& [u2, v2] : coef)
                            gram(u1, u2) += std::conj(v1) * v2;
                }
            }
        }
    }

    EigResult eig = hermitian_eig(hermitize(gram), 0.0);
    std::vector<double> sigma(nu);
    for (int i = 0; i < nu; ++i)
        sigma[i] = eig.values[i] > 0.0 ? std::sqrt(eig.values[i]) : 0.0;
    const double smax = std::max(sigma.empty() ? 0.0 : sigma.back(), tuple_scale(a, b));
    const double cut = rank_threshold(tol, a.k, m, n, smax);
    const double screen = std::max(cut, 1e-6 * smax);
    const CMatrix qbh = sb.q; // X = Q_B Xt Q_A*
    const CMatrix qah = adjoint(sa.q);
    for (int col = 0; col < nu && sigma[col] <= screen; ++col) {
        CMatrix xt(m, n);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < n; ++c) {
                const int u = uid[std::size_t(r) * n + c];
                if (u >= 0)
                    xt(r, c) = eig.vectors(u, col);
            }
        // Judge candidates by the exact equations in the original frame.
        CMatrix x = matmul(matmul(qbh, xt), qah);
        if (true_residual(a, b, x) <= cut)
            out.basis.push_back(std::move(x));
    }
    return out;
}

} // namespace

IntertwinerBasis intertwiner_basis(const MatrixTuple& a, const MatrixTuple& b, double tol) {
    require_same_k(a, b);
    return compressed_basis(a, b, tol);
}

IntertwinerBasis intertwiner_basis_dense(const MatrixTuple& a, const MatrixTuple& b, double tol) {
    require_same_k(a, b);
    return basis_from_gram(a, b, dense_gram(a, b), tol);
}

std::vector<CMatrix> commutant_basis(const MatrixTuple& t, double tol) {
    return intertwiner_basis(t, t, tol).basis;
}

int commutant_dimension(const MatrixTuple& t, double tol) {
    return int(intertwiner_basis(t, t, tol).basis.size());
}

bool is_irreducible(const MatrixTuple& t, double tol) {
    return commutant_dimension(t, tol) == 1;
}

} // namespace tupdec
