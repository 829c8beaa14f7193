#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "coinstop/rational.hpp"

namespace coinstop::cli {

inline constexpr const char* kSchemaVersion = "1.0";

enum class Format { Text, Json, Csv };
Format parse_format(const std::string& text);

/// Column kinds. Exact columns carry a Rational and expand to two CSV
/// columns (`name` as a decimal, `name_exact` as A/B).
enum class Kind { Text, Integer, Real, Exact, Boolean };

struct Column {
  std::string name;
  Kind kind = Kind::Text;
};

using Cell = std::variant<std::string, std::int64_t, double, Rational, bool>;

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  [[nodiscard]] bool empty() const { return columns.empty(); }
};

struct Report {
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  /// Scalars reported alongside (or instead of) the main table.
  std::vector<std::pair<std::string, Cell>> summary;
  Table rows;
  /// Extra tables; present in JSON and text output, not in CSV.
  std::vector<std::pair<std::string, Table>> tables;
  /// Text output prints only the last cell of the single row.
  bool scalar_text = false;
};

struct RenderOptions {
  Format format = Format::Text;
  int digits = 10;
};

/// Real values in `digits` significant digits ("%.*g").
std::string format_real(double value, int digits);

void write_report(const Report& report, const RenderOptions& options, std::ostream& out);

/// One RFC 4180 field: quoted when it holds a comma, quote, CR or LF.
std::string csv_field(const std::string& text);

}  // namespace coinstop::cli
