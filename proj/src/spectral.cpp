#include "tupdec/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace tupdec {

namespace {

// Eigendecomposition of the Gram matrix M*M.  Hermitize first so the
// eigensolver's symmetry check is trivially exact.
EigResult gram_eig(const CMatrix& m) {
    return hermitian_eig(hermitize(matmul(adjoint(m), m)), 0.0);
}

double clamped_sqrt(double lambda) {
    return lambda > 0.0 ? std::sqrt(lambda) : 0.0;
}

} // namespace

std::vector<double> singular_values(const CMatrix& m) {
    EigResult eig = gram_eig(m);
    std::vector<double> s(eig.values.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = clamped_sqrt(eig.values[eig.values.size() - 1 - i]);
    return s;
}

double spectral_norm(const CMatrix& m) {
    if (m.empty())
        return 0.0;
    EigResult eig = gram_eig(m);
    return clamped_sqrt(eig.values.back());
}

NullspaceResult nullspace(const CMatrix& m, double tol) {
    EigResult eig = gram_eig(m);
    const int n = m.cols;
    NullspaceResult res;
    res.sigma.resize(n);
    for (int i = 0; i < n; ++i)
        res.sigma[i] = clamped_sqrt(eig.values[i]);
    const double smax = res.sigma.empty() ? 0.0 : res.sigma.back();
    res.threshold = tol * std::max(m.rows, m.cols) * smax;
    // Squaring into the Gram matrix floods true zeros up to about
    // sqrt(eps)*smax, which can sit above the advertised cut.  Screen a
    // wider window and let the residual in the original equation decide.
    const double screen = std::max(res.threshold, 1e-6 * smax);
    std::vector<int> cols;
    for (int j = 0; j < n && res.sigma[j] <= screen; ++j) {
        double r2 = 0.0;
        for (int i = 0; i < m.rows; ++i) {
            cplx acc = 0.0;
            for (int l = 0; l < n; ++l)
                acc += m(i, l) * eig.vectors(l, j);
            r2 += std::norm(acc);
        }
        if (std::sqrt(r2) <= res.threshold)
            cols.push_back(j);
    }
    res.basis = CMatrix(n, int(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < n; ++i)
            res.basis(i, int(j)) = eig.vectors(i, cols[j]);
    return res;
}

CMatrix absolute_value(const CMatrix& t) {
    EigResult eig = gram_eig(t);
    const int n = t.cols;
    // Q diag(sqrt(lambda)) Q*
    CMatrix r(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (int l = 0; l < n; ++l)
                acc += eig.vectors(i, l) * clamped_sqrt(eig.values[l]) * std::conj(eig.vectors(j, l));
            r(i, j) = acc;
        }
    }
    return hermitize(r);
}

CMatrix b_transform(const CMatrix& t) {
    EigResult eig = gram_eig(t);
    const int n = t.cols;
    // (I + |T|)^(-1) = Q diag(1/(1+sigma)) Q*, computed in the same
    // eigenbasis so no generic inversion is needed.
    CMatrix inv(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (int l = 0; l < n; ++l)
                acc += eig.vectors(i, l) * (1.0 / (1.0 + clamped_sqrt(eig.values[l]))) *
                       std::conj(eig.vectors(j, l));
            inv(i, j) = acc;
        }
    }
    return matmul(t, hermitize(inv));
}

} // namespace tupdec
