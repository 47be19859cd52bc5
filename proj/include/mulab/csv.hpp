#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace mulab::csv {

// RFC-4180 style: fields with comma, quote, or newline are double-quoted,
// embedded quotes doubled.
std::string quote(std::string_view field);

// Parses a whole CSV stream into rows of fields. Handles quoted fields,
// doubled quotes, embedded newlines inside quotes, and CRLF line ends.
// Lines starting with '#' outside of any quoted field are skipped (provenance
// headers). Empty lines are skipped.
std::vector<std::vector<std::string>> parse(std::istream& in);

// Shortest round-trip decimal form of a double ("0.5", "1e-12", ...).
std::string format_double(double value);

}  // namespace mulab::csv
