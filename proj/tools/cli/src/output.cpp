#include "output.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "zeno/errors.hpp"

namespace zeno::cli {

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw ValidationError("--format must be csv or json");
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\r\n") == std::string::npos) return raw;
  std::string quoted = "\"";
  for (char c : raw) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

namespace {

std::string cell_text(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  if (const auto* u = std::get_if<std::uint64_t>(&cell)) return std::to_string(*u);
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  return {};
}

void flatten(const Json& node, const std::string& prefix, std::ostream& os) {
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      flatten(*it, prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    }
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) flatten(node[i], prefix + "." + std::to_string(i), os);
  } else {
    std::string value;
    if (node.is_number_float()) {
      value = format_double(node.get<double>());
    } else if (node.is_string()) {
      value = node.get<std::string>();
    } else if (!node.is_null()) {
      value = node.dump();
    }
    os << csv_field(prefix) << ',' << csv_field(value) << "\r\n";
  }
}

}  // namespace

Json cell_to_json(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return std::isfinite(*d) ? Json(*d) : Json(nullptr);
  if (const auto* u = std::get_if<std::uint64_t>(&cell)) return Json(*u);
  if (const auto* s = std::get_if<std::string>(&cell)) return s->empty() ? Json(nullptr) : Json(*s);
  return Json(nullptr);
}

void Table::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_field(columns[i]);
  os << "\r\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(row[i]));
    os << "\r\n";
  }
}

Json Table::to_json() const {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = cell_to_json(row[i]);
    out.push_back(std::move(obj));
  }
  return out;
}

void write_flat_csv(const Json& doc, std::ostream& os) {
  os << "field,value\r\n";
  flatten(doc, "", os);
}

}  // namespace zeno::cli
