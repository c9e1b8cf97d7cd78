#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace zeno::cli {

using Json = nlohmann::ordered_json;

enum class Format { Csv, Json };

Format parse_format(const std::string& name);

// Shortest decimal form that reads back to the same double.
std::string format_double(double value);

// RFC 4180 field quoting: fields containing a comma, quote or line break are
// wrapped in quotes with embedded quotes doubled.
std::string csv_field(const std::string& raw);

using Cell = std::variant<std::monostate, double, std::uint64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void write_csv(std::ostream& os) const;
  Json to_json() const;
};

// Leaves of `doc` as `field,value` rows, nested keys joined with '.'.
void write_flat_csv(const Json& doc, std::ostream& os);

Json cell_to_json(const Cell& cell);

}  // namespace zeno::cli
