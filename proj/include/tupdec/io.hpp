#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"
#include "tupdec/field.hpp"
#include "tupdec/matrix.hpp"

namespace tupdec {

// Document formats. A tuple document is {"k": .., "n": .., "matrices": ..}
// with each complex entry a two-element [re, im] array; a field document is
// {"atoms": [{"id", "weight", "mult", "tuple"}, ..]} where mult is a
// positive integer or the string "inf". Parsers throw ParseError with a
// message naming the offending path.

std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

std::string read_text_file(const std::string& path);

nlohmann::ordered_json tuple_to_json(const MatrixTuple& t);
MatrixTuple tuple_from_json(const nlohmann::json& j);
MatrixTuple load_tuple(const std::string& path);

nlohmann::ordered_json field_to_json(const MatrixField& f);
MatrixField field_from_json(const nlohmann::json& j, int m_cap);
MatrixField load_field(const std::string& path, int m_cap);

} // namespace tupdec
