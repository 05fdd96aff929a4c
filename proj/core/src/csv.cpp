#include "lmsr/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lmsr/errors.hpp"
#include "lmsr/render.hpp"

namespace lmsr {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool blank(std::string_view line) { return trim(line).empty(); }

double parse_number(std::string_view field, std::size_t line) {
  if (field.empty()) throw ParseError("empty field", line);
  if (field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ptr != field.data() + field.size()) throw ParseError("not a number: '" + std::string(field) + "'", line);
  if (ec == std::errc::result_out_of_range) throw ValueError("value out of range on line " + std::to_string(line));
  if (ec != std::errc()) throw ParseError("not a number: '" + std::string(field) + "'", line);
  if (!std::isfinite(v)) throw ValueError("non-finite value on line " + std::to_string(line));
  return v;
}

}  // namespace

Dataset read_dataset(std::istream& in, std::optional<UnitsTable> units) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    if (lineno == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    for (auto f : split_fields(line)) {
      if (f.empty()) throw ParseError("empty column name", lineno);
      header.emplace_back(f);
    }
    break;
  }
  if (header.size() < 2) throw ParseError("header needs at least one variable and a target", lineno);
  const std::size_t n = header.size() - 1;
  std::vector<double> rows;
  std::vector<double> targets;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw ShapeError("row has " + std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(header.size()),
                       lineno);
    }
    for (std::size_t i = 0; i < n; ++i) rows.push_back(parse_number(fields[i], lineno));
    targets.push_back(parse_number(fields[n], lineno));
  }
  if (targets.empty()) throw ShapeError("no data rows", lineno);
  header.pop_back();
  return Dataset(std::move(header), std::move(rows), std::move(targets), std::move(units));
}

UnitsTable read_units(std::istream& in, const std::vector<std::string>& variables) {
  std::string line;
  std::size_t lineno = 0;
  UnitsTable table;
  bool have_header = false;
  std::vector<std::optional<UnitVector>> found(variables.size());
  std::optional<UnitVector> target;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    const auto fields = split_fields(line);
    if (!have_header) {
      if (fields.size() < 2 || fields[0] != "name") throw ParseError("units header must read name,dim1,...", lineno);
      for (std::size_t i = 1; i < fields.size(); ++i) table.dimensions.emplace_back(fields[i]);
      have_header = true;
      continue;
    }
    if (fields.size() != table.dimensions.size() + 1) {
      throw ShapeError("units row has " + std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(table.dimensions.size() + 1),
                       lineno);
    }
    std::vector<Rational> exps;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      try {
        exps.push_back(parse_rational(fields[i]));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), lineno);
      }
    }
    if (fields[0] == "__target__") {
      target = UnitVector(std::move(exps));
      continue;
    }
    bool matched = false;
    for (std::size_t v = 0; v < variables.size(); ++v) {
      if (variables[v] == fields[0]) {
        found[v] = UnitVector(std::move(exps));
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError("units for unknown variable '" + std::string(fields[0]) + "'", lineno);
  }
  if (!have_header) throw ParseError("units file is empty", lineno);
  if (!target) throw ConfigError("units file has no __target__ row");
  for (std::size_t v = 0; v < variables.size(); ++v) {
    if (!found[v]) throw ConfigError("units file has no row for '" + variables[v] + "'");
    table.variables.push_back(*found[v]);
  }
  table.target = *target;
  table.validate(variables.size());
  return table;
}

Dataset load_dataset(const std::string& points_path, const std::optional<std::string>& units_path) {
  std::ifstream points(points_path);
  if (!points) throw ParseError("cannot open data file '" + points_path + "'");
  Dataset data = read_dataset(points);
  if (!units_path) return data;
  std::ifstream units(*units_path);
  if (!units) throw ParseError("cannot open units file '" + *units_path + "'");
  return data.with_units(read_units(units, data.names()));
}

void write_dataset(std::ostream& out, const Dataset& data, const std::string& target_name) {
  for (const auto& name : data.names()) out << name << ',';
  out << target_name << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (double v : data.row(i)) out << format_constant(v) << ',';
    out << format_constant(data.targets()[i]) << '\n';
  }
}

void write_units(std::ostream& out, const UnitsTable& units, const std::vector<std::string>& variables) {
  out << "name";
  for (const auto& d : units.dimensions) out << ',' << d;
  out << '\n';
  auto row = [&](const std::string& name, const UnitVector& u) {
    out << name;
    for (const auto& e : u.exponents()) out << ',' << to_string(e);
    out << '\n';
  };
  for (std::size_t v = 0; v < variables.size(); ++v) row(variables[v], units.variables[v]);
  row("__target__", units.target);
}

}  // namespace lmsr
