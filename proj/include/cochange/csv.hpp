#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cochange::csv {

/// Splits one CSV record. Supports double-quoted fields with "" escapes.
/// Throws ParseError (tagged with `line_no`) on an unterminated quote.
std::vector<std::string> split_line(std::string_view line, std::size_t line_no = 0);

/// Quotes a field only when it contains a comma, quote or newline.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Reads a header-first CSV stream. The header must match `expected_header`
/// exactly; every row must have the same arity. Blank lines are skipped.
std::vector<std::vector<std::string>> read_table(std::istream& in,
                                                 const std::vector<std::string>& expected_header);

/// Shortest decimal representation that round-trips; deterministic.
std::string format_double(double value);

}  // namespace cochange::csv
