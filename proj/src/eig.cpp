#include "tupdec/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tupdec {

namespace {

struct Rotation {
    int p = 0;
    int q = 0;
    double c = 1.0;
    double s = 0.0;
    cplx u = 1.0; // phase of the pivot entry, |u| = 1
};

// Angle for the pivot (p,q) of the current matrix.  Returns false when the
// off-diagonal entry is already below the skip threshold.
bool make_rotation(const CMatrix& m, int p, int q, double skip, Rotation& rot) {
    const cplx b = m(p, q);
    const double ab = std::abs(b);
    if (ab <= skip)
        return false;
    const double app = m(p, p).real();
    const double aqq = m(q, q).real();
    const double tau = (aqq - app) / (2.0 * ab);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    rot.p = p;
    rot.q = q;
    rot.c = 1.0 / std::sqrt(1.0 + t * t);
    rot.s = t * rot.c;
    rot.u = b / ab;
    return true;
}

// Left phase: rows p and q combined as J* A.  Disjoint pairs touch
// disjoint rows, so applying a whole round in parallel is safe.
void apply_rows(CMatrix& m, const Rotation& r) {
    const cplx su = r.s * r.u;
    for (int j = 0; j < m.cols; ++j) {
        const cplx x = m(r.p, j);
        const cplx y = m(r.q, j);
        m(r.p, j) = r.c * x - su * y;
        m(r.q, j) = r.s * x + r.c * r.u * y;
    }
}

// Right phase: columns p and q combined as B J.
void apply_cols(CMatrix& m, const Rotation& r) {
    const cplx suc = r.s * std::conj(r.u);
    for (int i = 0; i < m.rows; ++i) {
        const cplx x = m(i, r.p);
        const cplx y = m(i, r.q);
        m(i, r.p) = r.c * x - suc * y;
        m(i, r.q) = r.s * x + r.c * std::conj(r.u) * y;
    }
}

// The rotation annihilates the pivot in exact arithmetic; pin the exact
// zeros and the real diagonal to stop rounding dust from accumulating.
void pin_pivot(CMatrix& m, const Rotation& r) {
    m(r.p, r.q) = 0.0;
    m(r.q, r.p) = 0.0;
    m(r.p, r.p) = m(r.p, r.p).real();
    m(r.q, r.q) = m(r.q, r.q).real();
}

double offdiag_norm(const CMatrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (i != j)
                s += std::norm(m(i, j));
    return std::sqrt(s);
}

EigResult finish(CMatrix& m, CMatrix& q) {
    const int n = m.rows;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return m(i, i).real() < m(j, j).real();
    });
    EigResult res;
    res.values.resize(n);
    res.vectors = CMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        res.values[j] = m(order[j], order[j]).real();
        for (int i = 0; i < n; ++i)
            res.vectors(i, j) = q(i, order[j]);
    }
    return res;
}

struct JacobiSetup {
    CMatrix m;
    CMatrix q;
    double thresh = 0.0;
    double skip = 0.0;
    long budget = 0;
};

JacobiSetup prepare(const CMatrix& h, double tol) {
    if (h.rows != h.cols)
        throw InvalidArgumentError("eigensolver needs a square matrix");
    const double scale = frob_norm(h);
    const double defect = frob_norm(sub(h, adjoint(h)));
    if (defect > tol * (1.0 + scale))
        throw NotHermitianError("matrix is not Hermitian at the working tolerance");
    JacobiSetup s;
    s.m = hermitize(h);
    s.q = CMatrix::identity(h.rows);
    s.thresh = 1e-14 * (1.0 + scale);
    s.skip = s.thresh / std::max(1, h.rows);
    s.budget = 30L * h.rows * h.rows;
    return s;
}

} // namespace

EigResult hermitian_eig_serial(const CMatrix& h, double tol) {
    JacobiSetup s = prepare(h, tol);
    const int n = s.m.rows;
    if (n == 1) {
        s.m(0, 0) = s.m(0, 0).real();
        return finish(s.m, s.q);
    }
    long used = 0;
    while (true) {
        if (offdiag_norm(s.m) <= s.thresh)
            return finish(s.m, s.q);
        if (used >= s.budget)
            throw NoConvergenceError("Jacobi rotation budget exhausted");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                Rotation rot;
                if (!make_rotation(s.m, p, q, s.skip, rot))
                    continue;
                apply_rows(s.m, rot);
                apply_cols(s.m, rot);
                apply_cols(s.q, rot);
                pin_pivot(s.m, rot);
                ++used;
            }
        }
    }
}

EigResult hermitian_eig(const CMatrix& h, double tol) {
    JacobiSetup s = prepare(h, tol);
    const int n = s.m.rows;
    if (n == 1) {
        s.m(0, 0) = s.m(0, 0).real();
        return finish(s.m, s.q);
    }
    // Round-robin tournament schedule: N-1 rounds of disjoint pairs cover
    // every (p,q) exactly once per sweep.  Pivot blocks of one round are
    // mutually untouched, so all angles come from the pre-round state.
    const int padded = (n % 2 == 0) ? n : n + 1;
    const int m1 = padded - 1;
    std::vector<int> seat(padded);
    std::vector<Rotation> round;
    round.reserve(padded / 2);
    long used = 0;
    while (true) {
        if (offdiag_norm(s.m) <= s.thresh)
            return finish(s.m, s.q);
        if (used >= s.budget)
            throw NoConvergenceError("Jacobi rotation budget exhausted");
        for (int r = 0; r < m1; ++r) {
            seat[0] = 0;
            for (int i = 1; i < padded; ++i)
                seat[i] = 1 + (r + i - 1) % m1;
            round.clear();
            for (int i = 0; i < padded / 2; ++i) {
                int p = seat[i];
                int q = seat[padded - 1 - i];
                if (p >= n || q >= n)
                    continue;
                if (p > q)
                    std::swap(p, q);
                Rotation rot;
                if (make_rotation(s.m, p, q, s.skip, rot))
                    round.push_back(rot);
            }
            if (round.empty())
                continue;
            const int nr = int(round.size());
#pragma omp parallel for schedule(static)
            for (int i = 0; i < nr; ++i)
                apply_rows(s.m, round[i]);
#pragma omp parallel for schedule(static)
            for (int i = 0; i < nr; ++i) {
                apply_cols(s.m, round[i]);
                apply_cols(s.q, round[i]);
            }
            for (const Rotation& rot : round)
                pin_pivot(s.m, rot);
            used += nr;
        }
    }
}

} // namespace tupdec
