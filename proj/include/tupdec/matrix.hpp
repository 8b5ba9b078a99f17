#pragma once

#include <complex>
#include <vector>

#include "tupdec/errors.hpp"

namespace tupdec {

using cplx = std::complex<double>;

// Dense complex matrix, row-major.  Complex scalars are pairs of 64-bit
// doubles throughout; there is no mixed-precision path.
struct CMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<cplx> a;

    CMatrix() = default;
    CMatrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * std::size_t(c)) {}

    cplx& operator()(int i, int j) { return a[std::size_t(i) * cols + j]; }
    const cplx& operator()(int i, int j) const { return a[std::size_t(i) * cols + j]; }

    bool empty() const { return rows == 0 || cols == 0; }

    static CMatrix identity(int n);
    static CMatrix zero(int r, int c) { return CMatrix(r, c); }
};

CMatrix adjoint(const CMatrix& m);
CMatrix add(const CMatrix& x, const CMatrix& y);
CMatrix sub(const CMatrix& x, const CMatrix& y);
CMatrix scale(cplx s, const CMatrix& m);
CMatrix hermitize(const CMatrix& m); // (M + M*)/2

// Production kernel: parallel over output rows above a size threshold.
// Each entry is a fixed-order dot product, so the result is bit-identical
// to matmul_serial for any thread count.
CMatrix matmul(const CMatrix& x, const CMatrix& y);
// Plain triple loop, kept as the reference kernel for tests and benchmarks.
CMatrix matmul_serial(const CMatrix& x, const CMatrix& y);

double frob_norm(const CMatrix& m);
double max_abs(const CMatrix& m);
bool all_finite(const CMatrix& m);

// U M U* for square U, M of equal dimension.
CMatrix conjugate(const CMatrix& u, const CMatrix& m);

void set_block(CMatrix& dst, int i0, int j0, const CMatrix& src);
CMatrix get_block(const CMatrix& src, int i0, int j0, int r, int c);

// k-tuple of n-by-n matrices acting on the same space.  k >= 1, n >= 1.
struct MatrixTuple {
    int k = 0;
    int n = 0;
    std::vector<CMatrix> t;
};

// Validating constructor; rejects empty lists, non-square or ragged
// members, and non-finite entries.
MatrixTuple make_tuple(std::vector<CMatrix> mats);

// m-fold inflation: each component becomes a block diagonal of m copies.
MatrixTuple inflate(const MatrixTuple& tup, int m);

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y);
MatrixTuple direct_sum(const std::vector<MatrixTuple>& parts);

// Component-wise U T_j U*.
MatrixTuple conjugate_tuple(const CMatrix& u, const MatrixTuple& tup);

// Component-wise V* T_j V for an isometry V (n x d, orthonormal columns).
MatrixTuple compress_tuple(const CMatrix& v, const MatrixTuple& tup);

double max_frob(const MatrixTuple& tup);

} // namespace tupdec
