#include "coinstop/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "coinstop/render.hpp"

namespace coinstop::cli {

namespace {

using ojson = nlohmann::ordered_json;

template <class... F>
struct Overload : F... {
  using F::operator()...;
};
template <class... F>
Overload(F...) -> Overload<F...>;

std::string cell_text(const Cell& cell, int digits) {
  return std::visit(Overload{[](const std::string& s) { return s; },
                             [](std::int64_t v) { return std::to_string(v); },
                             [digits](double v) { return format_real(v, digits); },
                             [digits](const Rational& v) { return to_decimal(v, digits); },
                             [](bool v) { return std::string(v ? "true" : "false"); }},
                    cell);
}

ojson cell_json(const Cell& cell, int digits) {
  return std::visit(
      Overload{[](const std::string& s) { return ojson(s); },
               [](std::int64_t v) { return ojson(v); },
               [digits](double v) {
                 if (!std::isfinite(v)) return ojson{{"value", nullptr}, {"decimal", format_real(v, digits)}, {"digits", digits}};
                 return ojson{{"value", v}, {"decimal", format_real(v, digits)}, {"digits", digits}};
               },
               [digits](const Rational& v) {
                 return ojson{{"exact", v.str()}, {"decimal", to_decimal(v, digits)}, {"digits", digits}};
               },
               [](bool v) { return ojson(v); }},
      cell);
}

ojson table_json(const Table& t, int digits) {
  ojson rows = ojson::array();
  for (const auto& row : t.rows) {
    ojson o = ojson::object();
    for (std::size_t c = 0; c < t.columns.size(); ++c) o[t.columns[c].name] = cell_json(row[c], digits);
    rows.push_back(std::move(o));
  }
  return rows;
}

void write_json(const Report& r, int digits, std::ostream& out) {
  ojson results = ojson::object();
  if (!r.summary.empty()) {
    ojson s = ojson::object();
    for (const auto& [k, v] : r.summary) s[k] = cell_json(v, digits);
    results["summary"] = std::move(s);
  }
  if (!r.rows.empty()) results["rows"] = table_json(r.rows, digits);
  for (const auto& [name, t] : r.tables) results[name] = table_json(t, digits);
  const ojson doc{{"schema_version", kSchemaVersion},
                  {"command", r.command},
                  {"params", r.params},
                  {"results", std::move(results)}};
  out << doc.dump(2) << '\n';
}

void write_csv_line(const std::vector<std::string>& fields, std::ostream& out) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_field(fields[i]);
  }
  out << "\r\n";
}

void write_csv(const Report& r, int digits, std::ostream& out) {
  if (r.rows.empty()) {
    write_csv_line({"field", "value", "exact"}, out);
    for (const auto& [k, v] : r.summary) {
      const auto* exact = std::get_if<Rational>(&v);
      write_csv_line({k, cell_text(v, digits), exact ? exact->str() : std::string()}, out);
    }
    return;
  }
  std::vector<std::string> header;
  for (const auto& c : r.rows.columns) {
    header.push_back(c.name);
    if (c.kind == Kind::Exact) header.push_back(c.name + "_exact");
  }
  write_csv_line(header, out);
  for (const auto& row : r.rows.rows) {
    std::vector<std::string> fields;
    for (std::size_t c = 0; c < r.rows.columns.size(); ++c) {
      fields.push_back(cell_text(row[c], digits));
      if (r.rows.columns[c].kind == Kind::Exact) {
        const auto* exact = std::get_if<Rational>(&row[c]);
        fields.push_back(exact ? exact->str() : std::string());
      }
    }
    write_csv_line(fields, out);
  }
}

void write_text_table(const Table& t, int digits, std::ostream& out) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].name.size();
  for (const auto& row : t.rows) {
    auto& line = cells.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) {
      line.push_back(cell_text(row[c], digits));
      width[c] = std::max(width[c], line.back().size());
    }
  }
  auto emit = [&](auto get) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      const std::string s = get(c);
      if (c) out << "  ";
      const bool left = t.columns[c].kind == Kind::Text;
      if (!left) out << std::string(width[c] - s.size(), ' ');
      out << s;
      if (left && c + 1 < t.columns.size()) out << std::string(width[c] - s.size(), ' ');
    }
    out << '\n';
  };
  emit([&](std::size_t c) { return t.columns[c].name; });
  for (const auto& line : cells) emit([&](std::size_t c) { return line[c]; });
}

void write_text(const Report& r, int digits, std::ostream& out) {
  if (r.scalar_text && r.rows.rows.size() == 1 && !r.rows.rows[0].empty()) {
    out << cell_text(r.rows.rows[0].back(), digits) << '\n';
    return;
  }
  std::size_t key_width = 0;
  for (const auto& [k, v] : r.summary) key_width = std::max(key_width, k.size());
  for (const auto& [k, v] : r.summary) {
    out << k << ':' << std::string(key_width - k.size() + 1, ' ') << cell_text(v, digits) << '\n';
  }
  bool first = r.summary.empty();
  if (!r.rows.empty()) {
    if (!first) out << '\n';
    write_text_table(r.rows, digits, out);
    first = false;
  }
  for (const auto& [name, t] : r.tables) {
    if (!first) out << '\n';
    out << "# " << name << '\n';
    write_text_table(t, digits, out);
    first = false;
  }
}

}  // namespace

Format parse_format(const std::string& text) {
  if (text == "text") return Format::Text;
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  throw std::invalid_argument("unknown format '" + text + "'");
}

std::string format_real(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

void write_report(const Report& report, const RenderOptions& options, std::ostream& out) {
  switch (options.format) {
    case Format::Json: write_json(report, options.digits, out); break;
    case Format::Csv: write_csv(report, options.digits, out); break;
    case Format::Text: write_text(report, options.digits, out); break;
  }
}

}  // namespace coinstop::cli
