#pragma once

// DIMACS CNF reading and writing.
//
// Extension: a comment line `c aux <v1> <v2> ... 0` appearing before the
// `p cnf` header declares auxiliary variables; every other variable is an
// input. Other comment lines are ignored.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pcforge/cnf.hpp"

namespace pcforge {

/// Throws ParseError (with line number) on malformed input.
Encoding parse_dimacs(std::string_view text);
Encoding read_dimacs_file(const std::filesystem::path& path);

/// Canonical output: sorted literals, clauses in insertion order.
/// `comments` are emitted verbatim as `c <line>` before the header.
std::string write_dimacs(const Formula& f, const std::vector<std::string>& comments = {});
std::string write_dimacs(const Encoding& e, const std::vector<std::string>& comments = {});

}  // namespace pcforge
