#include "tupdec/fingerprint.hpp"

#include <cmath>
#include <cstdio>

#include "tupdec/spectral.hpp"

namespace tupdec {

namespace {

cplx trace_over_n(const CMatrix& m) {
    cplx s = 0.0;
    for (int i = 0; i < m.rows; ++i)
        s += m(i, i);
    return s / double(m.rows);
}

void walk(const std::vector<CMatrix>& letters, std::vector<CMatrix>& stack,
          const std::vector<std::size_t>& offset, Fingerprint& fp, int depth,
          std::size_t index_in_level) {
    if (depth == fp.max_len)
        return;
    const std::size_t base = index_in_level * letters.size();
    for (std::size_t a = 0; a < letters.size(); ++a) {
        stack[depth + 1] = matmul(stack[depth], letters[a]);
        fp.values[offset[depth + 1] + base + a] = trace_over_n(stack[depth + 1]);
        walk(letters, stack, offset, fp, depth + 1, base + a);
    }
}

void append_rounded(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s(buf);
    if (s == "-0.000000")
        s = "0.000000";
    out += s;
}

} // namespace

Fingerprint word_fingerprint(const MatrixTuple& t, int max_len) {
    if (max_len < 0)
        throw InvalidArgumentError("negative word length");
    const double alphabet = 2.0 * t.k;
    if (std::pow(alphabet, max_len) > 1e6)
        throw WordBudgetError("word enumeration budget exceeded");

    Fingerprint fp;
    fp.k = t.k;
    fp.max_len = max_len;
    std::vector<std::size_t> offset(max_len + 2, 0);
    std::size_t level = 1;
    for (int l = 0; l <= max_len; ++l) {
        offset[l + 1] = offset[l] + level;
        level *= std::size_t(2 * t.k);
    }
    fp.values.assign(offset[max_len + 1], cplx(0.0));
    fp.values[0] = 1.0; // empty word, exact by definition

    std::vector<CMatrix> letters;
    letters.reserve(2 * t.k);
    for (int j = 0; j < t.k; ++j)
        letters.push_back(b_transform(t.t[j]));
    for (int j = 0; j < t.k; ++j)
        letters.push_back(adjoint(letters[j]));

    std::vector<CMatrix> stack(max_len + 1);
    stack[0] = CMatrix::identity(t.n);
    walk(letters, stack, offset, fp, 0, 0);
    return fp;
}

std::string fingerprint_key(const Fingerprint& fp) {
    std::string out;
    out.reserve(fp.values.size() * 20);
    for (std::size_t i = 0; i < fp.values.size(); ++i) {
        if (i)
            out += ';';
        append_rounded(out, fp.values[i].real());
        out += ',';
        append_rounded(out, fp.values[i].imag());
    }
    return out;
}

double fingerprint_distance(const Fingerprint& a, const Fingerprint& b) {
    if (a.k != b.k || a.max_len != b.max_len)
        throw InvalidArgumentError("fingerprint shapes differ");
    double d = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        d = std::max(d, std::abs(a.values[i] - b.values[i]));
    return d;
}

} // namespace tupdec
