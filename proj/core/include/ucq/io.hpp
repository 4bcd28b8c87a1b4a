#pragma once

#include <string>
#include <vector>

#include "ucq/simplicial.hpp"
#include "ucq/structure.hpp"

namespace ucq {

// Query files: a `FREE x1 x2 ...` header, then one or more `CQ` blocks of
// atoms `R(v1, v2, ...)`. Variables absent from FREE are existentially
// quantified, scoped to their block. `#` starts a comment, blank lines are
// ignored. Identifiers match [A-Za-z_][A-Za-z0-9_]*.
Ucq parse_query_file(const std::string& text);
std::string serialize_query_file(const Ucq& psi);

// Database files: one fact `R(a, b, ...)` per line plus optional
// `DOMAIN a b c ...` lines for constants that appear in no fact.
Structure parse_database_file(const std::string& text);
std::string serialize_database_file(const Structure& db);

// Complex files: a `GROUND 1 2 3 4` line, then one `FACET ...` line per facet.
// Non-maximal facets are tolerated and dropped (the parse reports how many).
struct ParsedComplex {
    Complex complex;
    int discarded_facets = 0;
};
ParsedComplex parse_complex_file(const std::string& text);
std::string serialize_complex_file(const Complex& c);

// One-line rendering of a query as a formula, for table output.
std::string format_query(const ConjunctiveQuery& q);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ucq
