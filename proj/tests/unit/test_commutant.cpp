#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "support/gen.hpp"
#include "support/oracle.hpp"
#include "tupdec/commutant.hpp"
#include "tupdec/errors.hpp"
#include "tupdec/matrix.hpp"

using namespace tupdec;

namespace {

constexpr double kTol = 1e-9;

CMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
    CMatrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

MatrixTuple pauli_pair() {
    return make_tuple({mat2(0, 1, 1, 0), mat2(1, 0, 0, -1)});
}

cplx hs_inner(const CMatrix& x, const CMatrix& y) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i)
        acc += std::conj(x.a[i]) * y.a[i];
    return acc;
}

double intertwine_residual(const MatrixTuple& a, const MatrixTuple& b, const CMatrix& x) {
    double worst = 0.0;
    for (int j = 0; j < a.k; ++j) {
        worst = std::max(worst, frob_norm(sub(matmul(x, a.t[j]), matmul(b.t[j], x))));
        worst = std::max(worst,
                         frob_norm(sub(matmul(x, adjoint(a.t[j])), matmul(adjoint(b.t[j]), x))));
    }
    return worst;
}

void check_basis_contract(const MatrixTuple& a, const MatrixTuple& b,
                          const IntertwinerBasis& ib) {
    double scale = 1.0;
    for (int j = 0; j < a.k; ++j)
        scale = std::max(scale, 1.0 + frob_norm(a.t[j]) + frob_norm(b.t[j]));
    for (std::size_t i = 0; i < ib.basis.size(); ++i) {
        CHECK(intertwine_residual(a, b, ib.basis[i]) <= 10.0 * kTol * scale);
        for (std::size_t l = 0; l <= i; ++l) {
            cplx g = hs_inner(ib.basis[l], ib.basis[i]);
            double want = (l == i) ? 1.0 : 0.0;
            CHECK(std::abs(g - want) <= 1e-10);
        }
    }
}

} // namespace

TEST_SUITE("commutant") {

TEST_CASE("pauli pair has a scalar commutant") {
    MatrixTuple p = pauli_pair();
    std::vector<CMatrix> basis = commutant_basis(p, kTol);
    REQUIRE(basis.size() == 1);
    const CMatrix& x = basis[0];
    cplx mean = (x(0, 0) + x(1, 1)) / 2.0;
    CHECK(frob_norm(sub(x, scale(mean, CMatrix::identity(2)))) <= 1e-9);
    CHECK(std::abs(frob_norm(x) - 1.0) <= 1e-10);
    CHECK(is_irreducible(p, kTol));
    CHECK(commutant_dimension(p, kTol) == 1);
}

TEST_CASE("no intertwiners across unrelated dimensions") {
    MatrixTuple one = make_tuple({CMatrix::identity(1), CMatrix::identity(1)});
    IntertwinerBasis ib = intertwiner_basis(pauli_pair(), one, kTol);
    CHECK(ib.basis.empty());
    CHECK(ib.source_dim == 2);
    CHECK(ib.target_dim == 1);
}

TEST_CASE("identity tuple has the full matrix algebra as commutant") {
    MatrixTuple id2 = make_tuple({CMatrix::identity(2)});
    CHECK(commutant_dimension(id2, kTol) == 4);
    CHECK_FALSE(is_irreducible(id2, kTol));
}

TEST_CASE("distinct diagonal has the diagonal commutant") {
    CMatrix d = mat2(1, 0, 0, 2);
    MatrixTuple t = make_tuple({d});
    std::vector<CMatrix> basis = commutant_basis(t, kTol);
    CHECK(basis.size() == 2);
    for (const CMatrix& x : basis) {
        CHECK(std::abs(x(0, 1)) <= 1e-9);
        CHECK(std::abs(x(1, 0)) <= 1e-9);
    }
}

TEST_CASE("inflation multiplies commutant dimension by m squared") {
    MatrixTuple p = pauli_pair();
    CHECK(commutant_dimension(inflate(p, 3), kTol) == 9);
}

TEST_CASE("basis elements satisfy the equations and are orthonormal") {
    Rng rng(111);
    for (int trial = 0; trial < 8; ++trial) {
        int k = 1 + int(rng.next() % 3);
        int n = 1 + int(rng.next() % 5);
        int m = 1 + int(rng.next() % 5);
        MatrixTuple a = gen::random_tuple(k, n, rng);
        MatrixTuple b = (rng.next() % 2) ? gen::random_tuple(k, m, rng) : a;
        check_basis_contract(a, b, intertwiner_basis(a, b, kTol));
        check_basis_contract(a, b, intertwiner_basis_dense(a, b, kTol));
    }
}

TEST_CASE("production, dense, and oracle dimensions agree") {
    Rng rng(222);
    for (int trial = 0; trial < 12; ++trial) {
        int k = 1 + int(rng.next() % 3);
        std::vector<int> dims{1 + int(rng.next() % 3), 1 + int(rng.next() % 3)};
        std::vector<MatrixTuple> fam = gen::inequivalent_family(k, dims, rng);
        MatrixTuple a = direct_sum(inflate(fam[0], 1 + int(rng.next() % 2)),
                                   inflate(fam[1], 1 + int(rng.next() % 2)));
        CMatrix u = gen::random_unitary(a.n, rng);
        MatrixTuple b = conjugate_tuple(u, a);
        int fast = int(intertwiner_basis(a, b, kTol).basis.size());
        int dense = int(intertwiner_basis_dense(a, b, kTol).basis.size());
        int direct = oracle::intertwiner_dim(a, b, kTol);
        CHECK(fast == dense);
        CHECK(fast == direct);
    }
}

TEST_CASE("Schur dichotomy between irreducibles") {
    Rng rng(333);
    for (int trial = 0; trial < 10; ++trial) {
        int k = 2;
        int n = 1 + int(rng.next() % 3);
        MatrixTuple a = gen::random_irreducible(k, n, rng);
        bool same = (rng.next() % 2) != 0;
        MatrixTuple b =
            same ? conjugate_tuple(gen::random_unitary(n, rng), a) : gen::random_irreducible(k, n, rng);
        IntertwinerBasis ib = intertwiner_basis(a, b, kTol);
        int dim = int(ib.basis.size());
        CHECK((dim == 0 || dim == 1));
        if (dim == 1) {
            const CMatrix& x = ib.basis[0];
            CMatrix g = matmul(adjoint(x), x);
            cplx c = 0.0;
            for (int i = 0; i < g.rows; ++i)
                c += g(i, i);
            c /= double(g.rows);
            CMatrix ci = scale(c, CMatrix::identity(g.rows));
            CHECK(frob_norm(sub(g, ci)) <= 1e-8);
        }
    }
}

TEST_CASE("intertwiner dimension is invariant under conjugation") {
    Rng rng(444);
    for (int trial = 0; trial < 6; ++trial) {
        int k = 1 + int(rng.next() % 2);
        int n = 2 + int(rng.next() % 3);
        MatrixTuple a = gen::random_tuple(k, n, rng);
        MatrixTuple b = gen::random_tuple(k, n, rng);
        CMatrix u = gen::random_unitary(n, rng);
        CMatrix v = gen::random_unitary(n, rng);
        int before = int(intertwiner_basis(a, b, kTol).basis.size());
        int after = int(
            intertwiner_basis(conjugate_tuple(u, a), conjugate_tuple(v, b), kTol).basis.size());
        CHECK(before == after);
    }
}

TEST_CASE("commutant dimension of a two-class blockform is the sum of squares") {
    Rng rng(555);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<MatrixTuple> fam = gen::inequivalent_family(2, {2, 2}, rng);
        int ma = 1 + int(rng.next() % 3);
        int mb = 1 + int(rng.next() % 3);
        MatrixTuple t = direct_sum(inflate(fam[0], ma), inflate(fam[1], mb));
        CHECK(commutant_dimension(t, kTol) == ma * ma + mb * mb);
    }
}

} // TEST_SUITE
