#include "rfg/emit.hpp"

#include <charconv>
#include <json.hpp>

#include "rfg/errors.hpp"

namespace rfg::emit {

namespace {

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + '"';
}

std::string cell_text(const Cell &c) {
  struct {
    std::string operator()(const std::string &s) const { return s; }
    std::string operator()(const BigInt &v) const { return v.get_str(); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  } visit;
  return std::visit(visit, c);
}

nlohmann::ordered_json cell_json(const Cell &c) {
  if (auto *s = std::get_if<std::string>(&c))
    return *s;
  if (auto *v = std::get_if<BigInt>(&c)) {
    static const BigInt limit("9007199254740991");
    if (abs(*v) > limit)
      return v->get_str();
    return static_cast<std::int64_t>(v->get_si());
  }
  if (auto *d = std::get_if<double>(&c))
    return *d;
  return std::get<bool>(c);
}

} // namespace

Format parse_format(std::string_view name) {
  if (name == "csv")
    return Format::csv;
  if (name == "json")
    return Format::json;
  throw DomainError("unknown format: " + std::string(name));
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string emit(const Table &table, Format format) {
  for (const auto &row : table.rows)
    if (row.size() != table.header.size())
      throw DomainError("row width does not match the header");
  if (format == Format::csv) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i)
      out += (i ? "," : "") + csv_field(table.header[i]);
    out += '\n';
    for (const auto &row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        out += (i ? "," : "") + csv_field(cell_text(row[i]));
      out += '\n';
    }
    return out;
  }
  auto arr = nlohmann::ordered_json::array();
  for (const auto &row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      obj[table.header[i]] = cell_json(row[i]);
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n')
        ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted)
    throw DomainError("unterminated quote in CSV");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace rfg::emit
