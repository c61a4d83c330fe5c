#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rfg/arith.hpp"

namespace rfg::emit {

using Cell = std::variant<std::string, BigInt, double, bool>;

/// Column-named rows; the header order is the output order for both formats.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { csv, json };
Format parse_format(std::string_view name);

/// CSV: header line, LF endings, fields quoted only when needed.
/// JSON: array of objects in header key order; integers above 2^53 - 1 in
/// magnitude become decimal strings.
std::string emit(const Table &table, Format format);

/// Shortest round-trip decimal form.
std::string format_double(double x);

/// Splits CSV text into rows of fields (RFC 4180 quoting).
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

} // namespace rfg::emit
