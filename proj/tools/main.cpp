// tupdec: decompose tuples of complex matrices into inflations of
// irreducible tuples, decide unitary equivalence and disjointness, and
// match atomic matrix fields.  Reads JSON documents, writes one JSON
// report to stdout (or --output); all numerical knobs are flags and every
// report records the exact parameters that produced it.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tupdec/commutant.hpp"
#include "tupdec/decompose.hpp"
#include "tupdec/equivalence.hpp"
#include "tupdec/errors.hpp"
#include "tupdec/field.hpp"
#include "tupdec/fingerprint.hpp"
#include "tupdec/io.hpp"

namespace {

using nlohmann::ordered_json;
using namespace tupdec;

constexpr const char* kVersion = "0.1.0";

struct Opts {
    double tol = 1e-9;
    std::uint64_t seed = 0;
    int max_word_len = 4;
    int m_cap = 8;
    std::string output;
};

struct Input {
    std::string path;
    std::string content;
};

Input slurp(const std::string& path) { return {path, read_text_file(path)}; }

nlohmann::json parse_json(const Input& in) {
    nlohmann::json j = nlohmann::json::parse(in.content, nullptr, false);
    if (j.is_discarded())
        throw ParseError("invalid JSON in " + in.path);
    return j;
}

ordered_json matrix_json(const CMatrix& m) {
    auto rows = ordered_json::array();
    for (int r = 0; r < m.rows; ++r) {
        auto row = ordered_json::array();
        for (int c = 0; c < m.cols; ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json report_skeleton(const std::string& command, const std::vector<Input>& inputs,
                             const Opts& o) {
    ordered_json rep;
    rep["command"] = command;
    auto ins = ordered_json::array();
    for (const Input& in : inputs) {
        ordered_json e;
        e["path"] = in.path;
        e["digest"] = "fnv1a64:" + fnv1a64_hex(in.content);
        ins.push_back(std::move(e));
    }
    rep["inputs"] = std::move(ins);
    rep["parameters"] = {{"tol", o.tol},
                         {"seed", o.seed},
                         {"max_word_len", o.max_word_len},
                         {"m_cap", o.m_cap}};
    return rep;
}

void emit(const ordered_json& rep, const Opts& o) {
    const std::string text = rep.dump(2) + "\n";
    if (o.output.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        std::ofstream out(o.output, std::ios::binary);
        if (!out)
            throw ParseError("cannot open output file: " + o.output);
        out.write(text.data(), std::streamsize(text.size()));
    }
}

ordered_json class_summary(const PrimeDecomposition& d) {
    auto arr = ordered_json::array();
    for (const IrreducibleClass& c : d.classes) {
        ordered_json e;
        e["dim"] = c.representative.n;
        e["mult"] = c.multiplicity;
        e["fingerprint_key"] = fingerprint_key(c.fingerprint);
        arr.push_back(std::move(e));
    }
    return arr;
}

int cmd_decompose(const std::string& path, const Opts& o) {
    const Input in = slurp(path);
    const MatrixTuple t = tuple_from_json(parse_json(in));
    const PrimeDecomposition d = prime_decompose(t, o.tol, o.seed);
    ordered_json rep = report_skeleton("decompose", {in}, o);
    ordered_json result;
    result["k"] = t.k;
    result["n"] = t.n;
    auto classes = ordered_json::array();
    for (const IrreducibleClass& c : d.classes) {
        ordered_json e;
        e["dim"] = c.representative.n;
        e["mult"] = c.multiplicity;
        e["fingerprint_key"] = fingerprint_key(c.fingerprint);
        e["representative"] = tuple_to_json(c.representative);
        classes.push_back(std::move(e));
    }
    result["classes"] = std::move(classes);
    result["global_unitary"] = matrix_json(d.global_unitary);
    result["residual"] = d.residual;
    rep["result"] = std::move(result);
    rep["residuals"] = {d.residual};
    rep["version"] = kVersion;
    emit(rep, o);
    return 0;
}

int cmd_equiv(const std::string& path_a, const std::string& path_b, bool disjoint_predicate,
              const Opts& o) {
    const Input in_a = slurp(path_a);
    const Input in_b = slurp(path_b);
    const MatrixTuple a = tuple_from_json(parse_json(in_a));
    const MatrixTuple b = tuple_from_json(parse_json(in_b));
    if (a.k != b.k)
        throw KMismatchError("tuples have different component counts (" + std::to_string(a.k) +
                             " vs " + std::to_string(b.k) + ")");
    const PrimeDecomposition da = prime_decompose(a, o.tol, o.seed);
    const PrimeDecomposition db = prime_decompose(b, o.tol, o.seed);
    const DecompositionMatch m = match_decompositions(da, db, o.tol);

    ordered_json rep = report_skeleton(disjoint_predicate ? "disjoint" : "equiv", {in_a, in_b}, o);
    ordered_json result;
    result["predicate"] = disjoint_predicate ? "disjoint" : "equivalent";
    const bool verdict = disjoint_predicate
                             ? m.pairs.empty()
                             : (a.n == b.n && m.bijective && m.multiplicities_equal);
    result["verdict"] = verdict;
    result["left"] = {{"n", a.n}, {"classes", class_summary(da)}};
    result["right"] = {{"n", b.n}, {"classes", class_summary(db)}};

    ordered_json witness;
    auto pairs = ordered_json::array();
    for (const ClassPairing& p : m.pairs) {
        ordered_json e;
        e["left_class"] = p.a_index;
        e["right_class"] = p.b_index;
        e["dim"] = da.classes[p.a_index].representative.n;
        e["left_mult"] = da.classes[p.a_index].multiplicity;
        e["right_mult"] = db.classes[p.b_index].multiplicity;
        e["residual"] = p.residual;
        pairs.push_back(std::move(e));
    }
    witness["pairs"] = std::move(pairs);
    witness["unmatched_left"] = m.unmatched_a;
    witness["unmatched_right"] = m.unmatched_b;
    ordered_json distinguishing;
    if (!disjoint_predicate && !verdict) {
        if (a.n != b.n) {
            distinguishing = {{"type", "dimension"}, {"left_n", a.n}, {"right_n", b.n}};
        } else if (!m.unmatched_a.empty()) {
            distinguishing = {{"type", "class"}, {"side", "left"}, {"index", m.unmatched_a[0]}};
        } else if (!m.unmatched_b.empty()) {
            distinguishing = {{"type", "class"}, {"side", "right"}, {"index", m.unmatched_b[0]}};
        } else {
            for (const ClassPairing& p : m.pairs)
                if (da.classes[p.a_index].multiplicity != db.classes[p.b_index].multiplicity) {
                    distinguishing = {{"type", "multiplicity"},
                                      {"left_class", p.a_index},
                                      {"right_class", p.b_index},
                                      {"left_mult", da.classes[p.a_index].multiplicity},
                                      {"right_mult", db.classes[p.b_index].multiplicity}};
                    break;
                }
        }
    } else if (disjoint_predicate && !verdict) {
        distinguishing = {{"type", "shared_class"},
                          {"left_class", m.pairs[0].a_index},
                          {"right_class", m.pairs[0].b_index}};
    }
    witness["distinguishing"] = std::move(distinguishing);
    result["witness"] = std::move(witness);
    rep["result"] = std::move(result);
    auto residuals = ordered_json::array();
    for (const ClassPairing& p : m.pairs)
        residuals.push_back(p.residual);
    rep["residuals"] = std::move(residuals);
    rep["version"] = kVersion;
    emit(rep, o);
    return 0;
}

int cmd_fingerprint(const std::string& path, const Opts& o) {
    const Input in = slurp(path);
    const MatrixTuple t = tuple_from_json(parse_json(in));
    const Fingerprint fp = word_fingerprint(t, o.max_word_len);
    ordered_json rep = report_skeleton("fingerprint", {in}, o);
    ordered_json result;
    result["k"] = t.k;
    result["n"] = t.n;
    result["max_len"] = fp.max_len;
    auto values = ordered_json::array();
    for (const cplx& v : fp.values)
        values.push_back({v.real(), v.imag()});
    result["values"] = std::move(values);
    result["key"] = fingerprint_key(fp);
    rep["result"] = std::move(result);
    rep["residuals"] = ordered_json::array();
    rep["version"] = kVersion;
    emit(rep, o);
    return 0;
}

int cmd_commutant(const std::string& path, const Opts& o) {
    const Input in = slurp(path);
    const MatrixTuple t = tuple_from_json(parse_json(in));
    const std::vector<CMatrix> basis = commutant_basis(t, o.tol);
    ordered_json rep = report_skeleton("commutant", {in}, o);
    ordered_json result;
    result["n"] = t.n;
    result["dimension"] = int(basis.size());
    result["irreducible"] = basis.size() == 1;
    // The basis itself only for moderate sizes; the dimension is the result.
    if (basis.size() * std::size_t(t.n) * t.n <= 16384) {
        auto arr = ordered_json::array();
        for (const CMatrix& x : basis)
            arr.push_back(matrix_json(x));
        result["basis"] = std::move(arr);
    } else {
        result["basis_omitted"] = true;
    }
    rep["result"] = std::move(result);
    rep["residuals"] = ordered_json::array();
    rep["version"] = kVersion;
    emit(rep, o);
    return 0;
}

ordered_json violations_json(const std::vector<Violation>& vs) {
    auto arr = ordered_json::array();
    for (const Violation& v : vs) {
        ordered_json e;
        e["kind"] = v.kind == Violation::Kind::Reducible ? "reducible" : "equivalent-pair";
        e["atoms"] = v.atom_ids;
        arr.push_back(std::move(e));
    }
    return arr;
}

int cmd_field_match(const std::string& path1, const std::string& path2, const Opts& o) {
    const Input in1 = slurp(path1);
    const Input in2 = slurp(path2);
    const MatrixField f1 = field_from_json(parse_json(in1), o.m_cap);
    const MatrixField f2 = field_from_json(parse_json(in2), o.m_cap);
    const std::vector<Violation> v1 = validate_field(f1, o.tol, o.seed);
    const std::vector<Violation> v2 = validate_field(f2, o.tol, o.seed);

    ordered_json rep = report_skeleton("field-match", {in1, in2}, o);
    ordered_json result;
    result["valid1"] = v1.empty();
    result["valid2"] = v2.empty();
    result["violations1"] = violations_json(v1);
    result["violations2"] = violations_json(v2);
    auto residuals = ordered_json::array();
    if (v1.empty() && v2.empty()) {
        const MatchOutcome mo = match_fields_detailed(f1, f2, o.tol, o.seed);
        if (mo.matching) {
            ordered_json mj;
            auto pairs = ordered_json::array();
            for (const auto& [x, y] : mo.matching->pairs)
                pairs.push_back({x, y});
            mj["pairs"] = std::move(pairs);
            mj["residuals"] = mo.matching->residuals;
            result["matching"] = std::move(mj);
            for (double r : mo.matching->residuals)
                residuals.push_back(r);
        } else {
            result["matching"] = nullptr;
            result["reason"] = mo.reason;
        }
    } else {
        result["matching"] = nullptr;
        result["reason"] = v1.empty() ? "field 2 fails validation" : "field 1 fails validation";
    }
    rep["result"] = std::move(result);
    rep["residuals"] = std::move(residuals);
    rep["version"] = kVersion;
    emit(rep, o);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"prime decomposition of matrix tuples"};
    app.require_subcommand(1);
    Opts o;
    app.add_option("--tol", o.tol, "rank / equivalence tolerance")->capture_default_str();
    app.add_option("--seed", o.seed, "seed for randomized splitting")->capture_default_str();
    app.add_option("--max-word-len", o.max_word_len, "fingerprint word length bound")
        ->capture_default_str();
    app.add_option("--m-cap", o.m_cap, "multiplicity cap standing in for infinity")
        ->capture_default_str();
    app.add_option("--output", o.output, "write the report here instead of stdout");

    std::string path_a, path_b;
    bool disjoint_flag = false;

    CLI::App* dec = app.add_subcommand("decompose", "prime decomposition of one tuple");
    dec->add_option("file", path_a, "tuple document")->required();
    dec->fallthrough();

    CLI::App* equiv = app.add_subcommand("equiv", "unitary equivalence of two tuples");
    equiv->add_option("file_a", path_a, "first tuple document")->required();
    equiv->add_option("file_b", path_b, "second tuple document")->required();
    equiv->add_flag("--disjoint", disjoint_flag, "decide disjointness instead");
    equiv->fallthrough();

    CLI::App* disj = app.add_subcommand("disjoint", "unitary disjointness of two tuples");
    disj->add_option("file_a", path_a, "first tuple document")->required();
    disj->add_option("file_b", path_b, "second tuple document")->required();
    disj->fallthrough();

    CLI::App* fng = app.add_subcommand("fingerprint", "trace-word invariants of one tuple");
    fng->add_option("file", path_a, "tuple document")->required();
    fng->fallthrough();

    CLI::App* com = app.add_subcommand("commutant", "commutant basis of one tuple");
    com->add_option("file", path_a, "tuple document")->required();
    com->fallthrough();

    CLI::App* fm = app.add_subcommand("field-match", "match two atomic matrix fields");
    fm->add_option("file_1", path_a, "first field document")->required();
    fm->add_option("file_2", path_b, "second field document")->required();
    fm->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (dec->parsed())
            return cmd_decompose(path_a, o);
        if (equiv->parsed())
            return cmd_equiv(path_a, path_b, disjoint_flag, o);
        if (disj->parsed())
            return cmd_equiv(path_a, path_b, true, o);
        if (fng->parsed())
            return cmd_fingerprint(path_a, o);
        if (com->parsed())
            return cmd_commutant(path_a, o);
        if (fm->parsed())
            return cmd_field_match(path_a, path_b, o);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const KMismatchError& e) {
        std::cerr << "contract mismatch: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
