#include "tupdec/field.hpp"

#include <algorithm>
#include <cmath>

#include "tupdec/commutant.hpp"
#include "tupdec/equivalence.hpp"
#include "tupdec/fingerprint.hpp"

namespace tupdec {

namespace {

constexpr double kPrefilterGap = 1e-6;
constexpr int kFieldFingerprintLen = 4;

struct Entry {
    const Atom* atom;
    const Section* sec;
    Fingerprint fp;
};

void require_shape(const MatrixField& f) {
    if (f.space.atoms.size() != f.sections.size())
        throw InvalidArgumentError("sections are not parallel to atoms");
    int k = -1;
    for (std::size_t i = 0; i < f.sections.size(); ++i) {
        const Section& s = f.sections[i];
        if (s.mult != kInfMult && s.mult < 1)
            throw InvalidArgumentError("multiplicity must be positive or the infinity sentinel");
        if (k < 0)
            k = s.tuple.k;
        else if (s.tuple.k != k)
            throw KMismatchError("sections have different tuple lengths");
    }
}

std::vector<Entry> nonnull_entries(const MatrixField& f) {
    std::vector<Entry> out;
    for (std::size_t i = 0; i < f.space.atoms.size(); ++i) {
        if (f.space.atoms[i].weight > 0.0)
            out.push_back({&f.space.atoms[i], &f.sections[i],
                           word_fingerprint(f.sections[i].tuple, kFieldFingerprintLen)});
    }
    std::sort(out.begin(), out.end(),
              [](const Entry& a, const Entry& b) { return a.atom->id < b.atom->id; });
    return out;
}

} // namespace

std::vector<Violation> validate_field(const MatrixField& f, double tol, std::uint64_t seed) {
    (void)seed; // the intertwiner tests are deterministic
    require_shape(f);
    std::vector<Violation> out;
    std::vector<Entry> entries = nonnull_entries(f);
    std::vector<bool> reducible(entries.size(), false);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!is_irreducible(entries[i].sec->tuple, tol)) {
            reducible[i] = true;
            out.push_back({Violation::Kind::Reducible, {entries[i].atom->id}});
        }
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
            if (reducible[i] || reducible[j])
                continue; // the pairwise condition applies to irreducible sections
            const MatrixTuple& a = entries[i].sec->tuple;
            const MatrixTuple& b = entries[j].sec->tuple;
            if (a.n != b.n)
                continue;
            if (fingerprint_distance(entries[i].fp, entries[j].fp) > kPrefilterGap)
                continue;
            AlignResult ar = align_irreducibles(a, b, tol);
            if (ar.ambiguous)
                throw ToleranceConflictError("section comparison fell into the ambiguity band");
            if (ar.unitary)
                out.push_back(
                    {Violation::Kind::EquivalentPair, {entries[i].atom->id, entries[j].atom->id}});
        }
    }
    return out;
}

MatrixTuple assemble(const MatrixField& f, int m_cap) {
    if (m_cap < 1)
        throw InvalidArgumentError("multiplicity cap must be positive");
    require_shape(f);
    std::vector<Entry> entries = nonnull_entries(f);
    if (entries.empty())
        throw EmptyFieldError("all atoms are null");
    std::vector<MatrixTuple> parts;
    for (const Entry& e : entries) {
        const int m = e.sec->mult == kInfMult ? m_cap : e.sec->mult;
        parts.push_back(inflate(e.sec->tuple, m));
    }
    return direct_sum(parts);
}

MatchOutcome match_fields_detailed(const MatrixField& f1, const MatrixField& f2, double tol,
                                   std::uint64_t seed) {
    (void)seed;
    require_shape(f1);
    require_shape(f2);
    std::vector<Entry> left = nonnull_entries(f1);
    std::vector<Entry> right = nonnull_entries(f2);
    MatchOutcome out;
    if (left.size() != right.size()) {
        out.reason = "non-null atom counts differ (" + std::to_string(left.size()) + " vs " +
                     std::to_string(right.size()) + ")";
        return out;
    }
    Matching m;
    std::vector<bool> used(right.size(), false);
    for (const Entry& a : left) {
        // For valid fields at most one section on the other side can be
        // equivalent to a (else two of them would be mutually equivalent),
        // so greedy assignment cannot paint itself into a corner. Ordering
        // candidates by fingerprint distance guards near-degenerate pairs.
        std::vector<std::size_t> cand;
        for (std::size_t j = 0; j < right.size(); ++j)
            if (!used[j] && right[j].sec->tuple.n == a.sec->tuple.n &&
                fingerprint_distance(a.fp, right[j].fp) <= kPrefilterGap)
                cand.push_back(j);
        std::stable_sort(cand.begin(), cand.end(), [&](std::size_t x, std::size_t y) {
            return fingerprint_distance(a.fp, right[x].fp) < fingerprint_distance(a.fp, right[y].fp);
        });
        bool paired = false;
        for (std::size_t j : cand) {
            AlignResult ar = align_irreducibles(a.sec->tuple, right[j].sec->tuple, tol);
            if (ar.ambiguous)
                throw ToleranceConflictError("section comparison fell into the ambiguity band");
            if (!ar.unitary)
                continue;
            if (a.sec->mult != right[j].sec->mult) {
                out.reason = "multiplicity mismatch between atoms '" + a.atom->id + "' and '" +
                             right[j].atom->id + "'";
                return out;
            }
            used[j] = true;
            m.pairs.emplace_back(a.atom->id, right[j].atom->id);
            m.residuals.push_back(ar.residual);
            paired = true;
            break;
        }
        if (!paired) {
            out.reason = "no equivalent section for atom '" + a.atom->id + "'";
            return out;
        }
    }
    out.matching = std::move(m);
    return out;
}

std::optional<Matching> match_fields(const MatrixField& f1, const MatrixField& f2, double tol,
                                     std::uint64_t seed) {
    return match_fields_detailed(f1, f2, tol, seed).matching;
}

} // namespace tupdec
