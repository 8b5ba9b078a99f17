#include "doctest.h"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "support/gen.hpp"
#include "support/oracle.hpp"
#include "tupdec/decompose.hpp"
#include "tupdec/equivalence.hpp"
#include "tupdec/errors.hpp"
#include "tupdec/fingerprint.hpp"
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

CMatrix sigma_x() { return mat2(0, 1, 1, 0); }
CMatrix sigma_z() { return mat2(1, 0, 0, -1); }

MatrixTuple pauli_pair() { return make_tuple({sigma_x(), sigma_z()}); }

MatrixTuple scalar_tuple(double v) {
    CMatrix m(1, 1);
    m(0, 0) = v;
    return make_tuple({m});
}

double scalar_defect(const CMatrix& u) {
    cplx c = u(0, 0);
    return frob_norm(sub(u, scale(c, CMatrix::identity(u.rows))));
}

} // namespace

TEST_SUITE("equivalence") {

TEST_CASE("fingerprint of the zero tuple") {
    Fingerprint fp = word_fingerprint(scalar_tuple(0.0), 3);
    REQUIRE(fp.values.size() == 15); // words over 2 letters, length <= 3
    CHECK(fp.values[0] == cplx(1, 0));
    for (std::size_t i = 1; i < fp.values.size(); ++i)
        CHECK(std::abs(fp.values[i]) <= 1e-15);
}

TEST_CASE("fingerprints are unitarily invariant") {
    Rng rng(41);
    for (int trial = 0; trial < 6; ++trial) {
        int k = 1 + int(rng.next() % 3);
        int n = 1 + int(rng.next() % 4);
        MatrixTuple t = gen::random_tuple(k, n, rng);
        MatrixTuple s = conjugate_tuple(gen::random_unitary(n, rng), t);
        CHECK(fingerprint_distance(word_fingerprint(t, 4), word_fingerprint(s, 4)) <= 1e-8);
    }
}

TEST_CASE("fingerprint entries are strict contractive traces") {
    Rng rng(43);
    for (int trial = 0; trial < 6; ++trial) {
        MatrixTuple t = gen::random_tuple(2, 3, rng, std::pow(10.0, 2.0 * rng.uniform()));
        Fingerprint fp = word_fingerprint(t, 4);
        for (const cplx& v : fp.values)
            CHECK(std::abs(v) <= 1.0 + 1e-12);
    }
}

// Swapping the two components of the flip/diagonal pair produces a
// unitarily equivalent tuple (conjugation by the symmetric orthogonal
// involution that exchanges the two bases), so every word trace matches.
// Scaling one component instead breaks equivalence at a length-2 word.
TEST_CASE("swapped pair agrees everywhere, scaled pair separates early") {
    MatrixTuple xz = pauli_pair();
    MatrixTuple zx = make_tuple({sigma_z(), sigma_x()});
    CHECK(fingerprint_distance(word_fingerprint(xz, 6), word_fingerprint(zx, 6)) <= 1e-8);
    CHECK(are_equivalent(xz, zx, kTol, 0));

    MatrixTuple scaled = make_tuple({sigma_x(), scale(2.0, sigma_z())});
    Fingerprint fa = word_fingerprint(xz, 2);
    Fingerprint fb = word_fingerprint(scaled, 2);
    CHECK(fingerprint_distance(fa, fb) > 1e-6);
    std::size_t words_up_to_len1 = 1 + 4; // empty word plus the four letters
    bool differs_by_len2 = false;
    for (std::size_t i = 0; i < fb.values.size() && !differs_by_len2; ++i)
        if (std::abs(fa.values[i] - fb.values[i]) > 1e-6)
            differs_by_len2 = i < words_up_to_len1 + 16;
    CHECK(differs_by_len2);
}

TEST_CASE("fingerprint keys are canonical") {
    Fingerprint fp = word_fingerprint(scalar_tuple(0.0), 2);
    std::string key = fingerprint_key(fp);
    CHECK(key.substr(0, 8) == "1.000000");
    CHECK(key.find("-0.000000") == std::string::npos);

    Fingerprint again = word_fingerprint(scalar_tuple(0.0), 2);
    CHECK(fingerprint_key(again) == key);
}

TEST_CASE("word budget guard") {
    Rng rng(47);
    MatrixTuple t = gen::random_tuple(3, 2, rng);
    CHECK_THROWS_AS(word_fingerprint(t, 8), WordBudgetError); // 6^8 words
    CHECK_THROWS_AS(word_fingerprint(t, -1), InvalidArgumentError);
}

TEST_CASE("fingerprint distance rejects mismatched shapes") {
    Fingerprint a = word_fingerprint(scalar_tuple(1.0), 2);
    Fingerprint b = word_fingerprint(scalar_tuple(1.0), 3);
    CHECK_THROWS_AS(fingerprint_distance(a, b), InvalidArgumentError);
}

TEST_CASE("unitary_between_irreducibles recovers a planted conjugation") {
    Rng rng(53);
    for (int trial = 0; trial < 5; ++trial) {
        int n = 1 + int(rng.next() % 3);
        MatrixTuple a = gen::random_irreducible(2, n, rng);
        CMatrix u0 = gen::random_unitary(n, rng);
        MatrixTuple b = conjugate_tuple(u0, a);
        auto u = unitary_between_irreducibles(a, b, kTol);
        REQUIRE(u.has_value());
        double scale_bound = 1.0;
        for (int j = 0; j < a.k; ++j)
            scale_bound = std::max(scale_bound, 1.0 + frob_norm(a.t[j]));
        double worst = 0.0;
        for (int j = 0; j < a.k; ++j)
            worst = std::max(worst, frob_norm(sub(conjugate(*u, a.t[j]), b.t[j])));
        CHECK(worst <= 10.0 * kTol * scale_bound);
    }
}

TEST_CASE("self alignment is a phase") {
    Rng rng(59);
    MatrixTuple a = gen::random_irreducible(2, 3, rng);
    auto u = unitary_between_irreducibles(a, a, kTol);
    REQUIRE(u.has_value());
    CHECK(scalar_defect(*u) <= 1e-8);
    CHECK(std::abs(std::abs((*u)(0, 0)) - 1.0) <= 1e-9);
}

TEST_CASE("alignment round trip composes to a phase") {
    Rng rng(61);
    MatrixTuple a = gen::random_irreducible(2, 2, rng);
    MatrixTuple b = conjugate_tuple(gen::random_unitary(2, rng), a);
    auto uab = unitary_between_irreducibles(a, b, kTol);
    auto uba = unitary_between_irreducibles(b, a, kTol);
    REQUIRE(uab.has_value());
    REQUIRE(uba.has_value());
    CMatrix round = matmul(*uba, *uab);
    CHECK(scalar_defect(round) <= 1e-8);
    CHECK(std::abs(std::abs(round(0, 0)) - 1.0) <= 1e-9);
}

TEST_CASE("alignment is absent across dimensions and across classes") {
    Rng rng(67);
    MatrixTuple three = gen::random_irreducible(2, 3, rng);
    CHECK_FALSE(unitary_between_irreducibles(pauli_pair(), three, kTol).has_value());

    std::vector<MatrixTuple> fam = gen::inequivalent_family(2, {2, 2}, rng);
    CHECK_FALSE(unitary_between_irreducibles(fam[0], fam[1], kTol).has_value());
}

TEST_CASE("alignment demands irreducible operands") {
    MatrixTuple id2 = make_tuple({CMatrix::identity(2), CMatrix::identity(2)});
    CHECK_THROWS_AS(unitary_between_irreducibles(id2, pauli_pair(), kTol), NotIrreducibleError);
    CHECK_THROWS_AS(unitary_between_irreducibles(pauli_pair(), id2, kTol), NotIrreducibleError);
}

TEST_CASE("are_equivalent on conjugates and on distinct inflations") {
    Rng rng(71);
    MatrixTuple t = gen::random_tuple(2, 4, rng);
    MatrixTuple moved = conjugate_tuple(gen::random_unitary(4, rng), t);
    CHECK(are_equivalent(t, moved, kTol, 0));

    MatrixTuple a = gen::random_irreducible(2, 2, rng);
    CHECK_FALSE(are_equivalent(inflate(a, 2), inflate(a, 3), kTol, 0));
}

TEST_CASE("direct sum order does not matter") {
    Rng rng(73);
    std::vector<MatrixTuple> fam = gen::inequivalent_family(2, {2, 1}, rng);
    MatrixTuple ab = direct_sum(fam[0], fam[1]);
    MatrixTuple ba = direct_sum(fam[1], fam[0]);
    CHECK(are_equivalent(ab, ba, kTol, 0));
    CHECK_FALSE(are_disjoint(ab, ba, kTol, 0));
}

TEST_CASE("are_equivalent rejects mismatched component counts") {
    MatrixTuple one = scalar_tuple(1.0);
    MatrixTuple two = make_tuple({CMatrix::identity(1), CMatrix::identity(1)});
    CHECK_THROWS_AS(are_equivalent(one, two, kTol, 0), KMismatchError);
    CHECK_THROWS_AS(are_disjoint(one, two, kTol, 0), KMismatchError);
}

TEST_CASE("disjointness basics") {
    CHECK(are_disjoint(scalar_tuple(1.0), scalar_tuple(2.0), kTol, 0));
    MatrixTuple p = pauli_pair();
    CHECK_FALSE(are_disjoint(p, p, kTol, 0));

    Rng rng(79);
    std::vector<MatrixTuple> fam = gen::inequivalent_family(2, {2, 2}, rng);
    MatrixTuple lhs = inflate(fam[0], 2);
    MatrixTuple rhs = direct_sum(fam[0], fam[1]);
    CHECK_FALSE(are_disjoint(lhs, rhs, kTol, 0));
    CHECK_FALSE(are_equivalent(lhs, rhs, kTol, 0));
    CHECK(are_disjoint(inflate(fam[0], 2), inflate(fam[1], 3), kTol, 0));
}

TEST_CASE("equivalence behaves like an equivalence relation") {
    Rng rng(83);
    MatrixTuple t = gen::random_tuple(2, 3, rng);
    CMatrix u = gen::random_unitary(3, rng);
    CMatrix v = gen::random_unitary(3, rng);
    MatrixTuple s = conjugate_tuple(u, t);
    MatrixTuple w = conjugate_tuple(v, s);
    CHECK(are_equivalent(t, t, kTol, 0));
    CHECK(are_equivalent(s, t, kTol, 0));
    CHECK(are_equivalent(t, w, kTol, 0));
}

TEST_CASE("match_decompositions reports pairs and leftovers") {
    Rng rng(89);
    std::vector<MatrixTuple> fam = gen::inequivalent_family(2, {2, 1, 2}, rng);
    MatrixTuple lhs = direct_sum(inflate(fam[0], 2), inflate(fam[1], 1));
    MatrixTuple rhs = direct_sum(inflate(fam[0], 2), inflate(fam[2], 1));
    PrimeDecomposition da = prime_decompose(lhs, kTol, 0);
    PrimeDecomposition db = prime_decompose(rhs, kTol, 0);
    DecompositionMatch m = match_decompositions(da, db, kTol);
    CHECK(m.pairs.size() == 1);
    CHECK(m.unmatched_a.size() == 1);
    CHECK(m.unmatched_b.size() == 1);
    CHECK_FALSE(m.bijective);
    for (const ClassPairing& pr : m.pairs)
        CHECK(pr.residual <= 1e-6);

    // same classes, different multiplicities
    PrimeDecomposition dc = prime_decompose(inflate(fam[0], 2), kTol, 0);
    PrimeDecomposition dd = prime_decompose(inflate(fam[0], 3), kTol, 0);
    DecompositionMatch mm = match_decompositions(dc, dd, kTol);
    CHECK(mm.bijective);
    CHECK_FALSE(mm.multiplicities_equal);
}

} // TEST_SUITE
