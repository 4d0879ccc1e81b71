#pragma once

#include "exclusion/model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace exclusion::io {

// atom    := "excl" degree? "(" varlist ";" varlist ")"
// degree  := "[" rational "]"          (omitted means 0)
// varlist := IDENT (WS IDENT)*
Atom parse_atom(std::string_view text);
std::string render_atom(const Atom& a);

// "x1 x2 | y1 y2", or "x1 x2 |[1/4]| y1 y2" for a nonzero degree.
std::string render_notation(const Atom& a);

// One atom per line; '#' starts a comment; blank lines are ignored.
std::vector<Atom> parse_assumptions(std::string_view text);
std::vector<Atom> read_assumptions_file(const std::string& path);

// Header of unique identifiers, then one comma separated row per assignment.
// Cells are taken verbatim (no quoting); blank lines are skipped.
Team parse_team_csv(std::string_view text);
Team read_team_csv_file(const std::string& path);
std::string render_team_csv(const Team& team);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace exclusion::io
