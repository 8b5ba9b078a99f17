#include "tupdec/matrix.hpp"

#include <cmath>
#include <utility>

namespace tupdec {

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

CMatrix adjoint(const CMatrix& m) {
    CMatrix r(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            r(j, i) = std::conj(m(i, j));
    return r;
}

static void require_same_shape(const CMatrix& x, const CMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols)
        throw InvalidArgumentError("matrix shape mismatch");
}

CMatrix add(const CMatrix& x, const CMatrix& y) {
    require_same_shape(x, y);
    CMatrix r(x.rows, x.cols);
    for (std::size_t i = 0; i < r.a.size(); ++i)
        r.a[i] = x.a[i] + y.a[i];
    return r;
}

CMatrix sub(const CMatrix& x, const CMatrix& y) {
    require_same_shape(x, y);
    CMatrix r(x.rows, x.cols);
    for (std::size_t i = 0; i < r.a.size(); ++i)
        r.a[i] = x.a[i] - y.a[i];
    return r;
}

CMatrix scale(cplx s, const CMatrix& m) {
    CMatrix r(m.rows, m.cols);
    for (std::size_t i = 0; i < r.a.size(); ++i)
        r.a[i] = s * m.a[i];
    return r;
}

CMatrix hermitize(const CMatrix& m) {
    if (m.rows != m.cols)
        throw InvalidArgumentError("hermitize needs a square matrix");
    CMatrix r(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            r(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return r;
}

namespace {

// Inner-product order is fixed (ascending l) so the parallel and serial
// kernels agree bit for bit and the output is independent of thread count.
void matmul_rows(const CMatrix& x, const CMatrix& y, CMatrix& r, int i) {
    const int n = x.cols;
    for (int j = 0; j < y.cols; ++j) {
        cplx acc = 0.0;
        for (int l = 0; l < n; ++l)
            acc += x(i, l) * y(l, j);
        r(i, j) = acc;
    }
}

constexpr long kParallelFlop = 1 << 16;

} // namespace

CMatrix matmul(const CMatrix& x, const CMatrix& y) {
    if (x.cols != y.rows)
        throw InvalidArgumentError("matmul inner dimension mismatch");
    CMatrix r(x.rows, y.cols);
    const long work = long(x.rows) * y.cols * x.cols;
    if (work >= kParallelFlop) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < x.rows; ++i)
            matmul_rows(x, y, r, i);
    } else {
        for (int i = 0; i < x.rows; ++i)
            matmul_rows(x, y, r, i);
    }
    return r;
}

CMatrix matmul_serial(const CMatrix& x, const CMatrix& y) {
    if (x.cols != y.rows)
        throw InvalidArgumentError("matmul inner dimension mismatch");
    CMatrix r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        matmul_rows(x, y, r, i);
    return r;
}

double frob_norm(const CMatrix& m) {
    double s = 0.0;
    for (const cplx& v : m.a)
        s += std::norm(v);
    return std::sqrt(s);
}

double max_abs(const CMatrix& m) {
    double s = 0.0;
    for (const cplx& v : m.a)
        s = std::max(s, std::abs(v));
    return s;
}

bool all_finite(const CMatrix& m) {
    for (const cplx& v : m.a)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return false;
    return true;
}

CMatrix conjugate(const CMatrix& u, const CMatrix& m) {
    return matmul(matmul(u, m), adjoint(u));
}

void set_block(CMatrix& dst, int i0, int j0, const CMatrix& src) {
    for (int i = 0; i < src.rows; ++i)
        for (int j = 0; j < src.cols; ++j)
            dst(i0 + i, j0 + j) = src(i, j);
}

CMatrix get_block(const CMatrix& src, int i0, int j0, int r, int c) {
    CMatrix out(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            out(i, j) = src(i0 + i, j0 + j);
    return out;
}

MatrixTuple make_tuple(std::vector<CMatrix> mats) {
    if (mats.empty())
        throw InvalidArgumentError("tuple needs at least one component");
    const int n = mats.front().rows;
    if (n < 1)
        throw InvalidArgumentError("tuple dimension must be positive");
    for (const CMatrix& m : mats) {
        if (m.rows != m.cols || m.rows != n)
            throw InvalidArgumentError("tuple components must be square of equal size");
        if (!all_finite(m))
            throw InvalidArgumentError("tuple has non-finite entries");
    }
    MatrixTuple tup;
    tup.k = int(mats.size());
    tup.n = n;
    tup.t = std::move(mats);
    return tup;
}

MatrixTuple inflate(const MatrixTuple& tup, int m) {
    if (m < 1)
        throw InvalidArgumentError("inflation multiplicity must be >= 1");
    MatrixTuple r;
    r.k = tup.k;
    r.n = tup.n * m;
    r.t.reserve(tup.k);
    for (int j = 0; j < tup.k; ++j) {
        CMatrix big(r.n, r.n);
        for (int c = 0; c < m; ++c)
            set_block(big, c * tup.n, c * tup.n, tup.t[j]);
        r.t.push_back(std::move(big));
    }
    return r;
}

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y) {
    return direct_sum(std::vector<MatrixTuple>{x, y});
}

MatrixTuple direct_sum(const std::vector<MatrixTuple>& parts) {
    if (parts.empty())
        throw InvalidArgumentError("direct sum of an empty list");
    const int k = parts.front().k;
    int n = 0;
    for (const MatrixTuple& p : parts) {
        if (p.k != k)
            throw KMismatchError("direct sum requires equal component counts");
        n += p.n;
    }
    MatrixTuple r;
    r.k = k;
    r.n = n;
    r.t.reserve(k);
    for (int j = 0; j < k; ++j) {
        CMatrix big(n, n);
        int off = 0;
        for (const MatrixTuple& p : parts) {
            set_block(big, off, off, p.t[j]);
            off += p.n;
        }
        r.t.push_back(std::move(big));
    }
    return r;
}

MatrixTuple conjugate_tuple(const CMatrix& u, const MatrixTuple& tup) {
    std::vector<CMatrix> mats;
    mats.reserve(tup.k);
    const CMatrix uh = adjoint(u);
    for (int j = 0; j < tup.k; ++j)
        mats.push_back(matmul(matmul(u, tup.t[j]), uh));
    return make_tuple(std::move(mats));
}

MatrixTuple compress_tuple(const CMatrix& v, const MatrixTuple& tup) {
    std::vector<CMatrix> mats;
    mats.reserve(tup.k);
    const CMatrix vh = adjoint(v);
    for (int j = 0; j < tup.k; ++j)
        mats.push_back(matmul(matmul(vh, tup.t[j]), v));
    return make_tuple(std::move(mats));
}

double max_frob(const MatrixTuple& tup) {
    double s = 0.0;
    for (const CMatrix& m : tup.t)
        s = std::max(s, frob_norm(m));
    return s;
}

} // namespace tupdec
