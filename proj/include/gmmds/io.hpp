#pragma once

// Text and JSON formats for support matrices, root families and the reports
// produced by the command-line tool.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gmmds/codegen.hpp"
#include "gmmds/reduction.hpp"
#include "gmmds/structures.hpp"
#include "gmmds/verify.hpp"

namespace gmmds {

using Json = nlohmann::ordered_json;

/// One row of 0/1 characters per line (blank lines and '#' comments
/// skipped), or the object {"m":..,"n":..,"rows":["110","011"]}.
/// Throws ParseError.
SupportMatrix parse_matrix(std::string_view text);
Json matrix_to_json(const SupportMatrix& M);

/// {"n":..,"sets":[[3],[1]]} with 1-based roots. Throws ParseError.
RootFamily parse_family(std::string_view text);
Json family_to_json(const RootFamily& F);
RootFamily family_from_json(const Json& j);

/// Whole file as a string; ParseError if it cannot be read.
std::string read_file(const std::filesystem::path& path);

/// Integer for prime fields, coefficient list c_0..c_{k-1} otherwise.
Json element_to_json(const GaloisField& field, FieldElem a);
Json field_to_json(const GaloisField& field);

const char* to_string(SearchStrategy s);
Json instance_to_json(const CodeInstance& inst, std::uint64_t seed, SearchStrategy strategy);
Json trace_to_json(const ReductionTrace& trace, const char* policy);
Json report_to_json(const VerifyReport& report);

}  // namespace gmmds
