#pragma once

#include <string>
#include <vector>

#include "tupdec/matrix.hpp"

namespace tupdec {

// Normalized word traces of the B-transformed tuple: for every word w of
// length <= max_len over the 2k letters B(T_1)..B(T_k), B(T_1)*..B(T_k)*,
// the entry tr(w)/n.  Entries are ordered by word length, then
// lexicographically by letter index; the empty word contributes the
// exact entry 1.  Unitarily equivalent tuples share fingerprints, and
// every entry has modulus at most 1 because the letters are strict
// contractions.
struct Fingerprint {
    int k = 0;
    int max_len = 0;
    std::vector<cplx> values;
};

// Throws WordBudgetError when (2k)^max_len would exceed 10^6 words.
Fingerprint word_fingerprint(const MatrixTuple& t, int max_len);

// Deterministic class key: every component rounded to 6 decimals, with
// negative zero canonicalized, joined in word order.  Used for grouping
// and for the canonical class ordering; collisions between inequivalent
// tuples are possible in principle and are resolved by the intertwiner
// test wherever a key is used to group.
std::string fingerprint_key(const Fingerprint& fp);

// Largest entrywise modulus difference.  Shapes must agree.
double fingerprint_distance(const Fingerprint& a, const Fingerprint& b);

} // namespace tupdec
