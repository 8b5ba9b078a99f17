#include "tupdec/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "tupdec/errors.hpp"

namespace tupdec {

namespace {

using nlohmann::json;

double finite_number(const json& j, const std::string& where) {
    if (!j.is_number())
        throw ParseError(where + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        throw ParseError(where + ": number is not finite");
    return v;
}

cplx complex_entry(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError(where + ": expected a [re, im] pair");
    return {finite_number(j[0], where), finite_number(j[1], where)};
}

int positive_int(const json& j, const std::string& where) {
    if (!j.is_number_integer())
        throw ParseError(where + ": expected an integer");
    const long long v = j.get<long long>();
    if (v < 1 || v > 1 << 20)
        throw ParseError(where + ": out of range");
    return int(v);
}

} // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a64(bytes));
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::ordered_json tuple_to_json(const MatrixTuple& t) {
    nlohmann::ordered_json j;
    j["k"] = t.k;
    j["n"] = t.n;
    auto mats = nlohmann::ordered_json::array();
    for (const CMatrix& m : t.t) {
        auto rows = nlohmann::ordered_json::array();
        for (int r = 0; r < m.rows; ++r) {
            auto row = nlohmann::ordered_json::array();
            for (int c = 0; c < m.cols; ++c)
                row.push_back({m(r, c).real(), m(r, c).imag()});
            rows.push_back(std::move(row));
        }
        mats.push_back(std::move(rows));
    }
    j["matrices"] = std::move(mats);
    return j;
}

MatrixTuple tuple_from_json(const json& j) {
    if (!j.is_object())
        throw ParseError("tuple: expected an object");
    if (!j.contains("k") || !j.contains("n") || !j.contains("matrices"))
        throw ParseError("tuple: missing k, n, or matrices");
    const int k = positive_int(j["k"], "tuple.k");
    const int n = positive_int(j["n"], "tuple.n");
    const json& mats = j["matrices"];
    if (!mats.is_array() || int(mats.size()) != k)
        throw ParseError("tuple.matrices: expected " + std::to_string(k) + " matrices");
    std::vector<CMatrix> out;
    for (int a = 0; a < k; ++a) {
        const json& m = mats[a];
        const std::string where = "tuple.matrices[" + std::to_string(a) + "]";
        if (!m.is_array() || int(m.size()) != n)
            throw ParseError(where + ": expected " + std::to_string(n) + " rows");
        CMatrix mat(n, n);
        for (int r = 0; r < n; ++r) {
            const json& row = m[r];
            if (!row.is_array() || int(row.size()) != n)
                throw ParseError(where + " row " + std::to_string(r) + ": expected " +
                                 std::to_string(n) + " entries");
            for (int c = 0; c < n; ++c)
                mat(r, c) = complex_entry(row[c], where);
        }
        out.push_back(std::move(mat));
    }
    return make_tuple(std::move(out));
}

MatrixTuple load_tuple(const std::string& path) {
    json j = json::parse(read_text_file(path), nullptr, false);
    if (j.is_discarded())
        throw ParseError("invalid JSON in " + path);
    return tuple_from_json(j);
}

nlohmann::ordered_json field_to_json(const MatrixField& f) {
    nlohmann::ordered_json j;
    auto atoms = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < f.space.atoms.size(); ++i) {
        nlohmann::ordered_json a;
        a["id"] = f.space.atoms[i].id;
        a["weight"] = f.space.atoms[i].weight;
        if (f.sections[i].mult == kInfMult)
            a["mult"] = "inf";
        else
            a["mult"] = f.sections[i].mult;
        a["tuple"] = tuple_to_json(f.sections[i].tuple);
        atoms.push_back(std::move(a));
    }
    j["atoms"] = std::move(atoms);
    return j;
}

MatrixField field_from_json(const json& j, int m_cap) {
    if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
        throw ParseError("field: expected an object with an atoms array");
    MatrixField f;
    std::set<std::string> seen;
    int k = -1;
    for (std::size_t i = 0; i < j["atoms"].size(); ++i) {
        const json& a = j["atoms"][i];
        const std::string where = "field.atoms[" + std::to_string(i) + "]";
        if (!a.is_object())
            throw ParseError(where + ": expected an object");
        for (const char* key : {"id", "weight", "mult", "tuple"})
            if (!a.contains(key))
                throw ParseError(where + ": missing " + key);
        if (!a["id"].is_string())
            throw ParseError(where + ".id: expected a string");
        Atom atom;
        atom.id = a["id"].get<std::string>();
        if (!seen.insert(atom.id).second)
            throw ParseError(where + ": duplicate atom id '" + atom.id + "'");
        atom.weight = finite_number(a["weight"], where + ".weight");
        if (atom.weight < 0.0)
            throw ParseError(where + ".weight: negative");
        Section sec;
        if (a["mult"].is_string()) {
            if (a["mult"].get<std::string>() != "inf")
                throw ParseError(where + ".mult: expected a positive integer or \"inf\"");
            sec.mult = kInfMult;
        } else {
            sec.mult = positive_int(a["mult"], where + ".mult");
            if (sec.mult > m_cap)
                throw ParseError(where + ".mult: exceeds the multiplicity cap " +
                                 std::to_string(m_cap));
        }
        sec.tuple = tuple_from_json(a["tuple"]);
        if (k < 0)
            k = sec.tuple.k;
        else if (sec.tuple.k != k)
            throw ParseError(where + ".tuple: tuple length differs from earlier atoms");
        f.space.atoms.push_back(std::move(atom));
        f.sections.push_back(std::move(sec));
    }
    return f;
}

MatrixField load_field(const std::string& path, int m_cap) {
    json j = json::parse(read_text_file(path), nullptr, false);
    if (j.is_discarded())
        throw ParseError("invalid JSON in " + path);
    return field_from_json(j, m_cap);
}

} // namespace tupdec
