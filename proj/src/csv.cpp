#include "cochange/csv.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "cochange/error.hpp"

namespace cochange::csv {

std::vector<std::string> split_line(std::string_view line, std::size_t line_no) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (quoted) throw ParseError(line_no, "unterminated quoted field");
  fields.push_back(std::move(current));
  return fields;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

std::vector<std::vector<std::string>> read_table(std::istream& in,
                                                 const std::vector<std::string>& expected_header) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_line(line, line_no);
    if (!have_header) {
      if (fields != expected_header) {
        std::string want;
        for (const auto& h : expected_header) want += (want.empty() ? "" : ",") + h;
        throw ParseError(line_no, "expected header '" + want + "'");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != expected_header.size()) {
      throw ParseError(line_no, "expected " + std::to_string(expected_header.size()) +
                                    " fields, got " + std::to_string(fields.size()));
    }
    rows.push_back(std::move(fields));
  }
  if (!have_header) throw ParseError(line_no, "missing header");
  return rows;
}

std::string format_double(double value) {
  if (value == 0.0) return "0";  // folds -0
  if (std::isnan(value)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

}  // namespace cochange::csv
