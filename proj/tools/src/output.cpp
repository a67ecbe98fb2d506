#include "lspec/tools/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>

#include "lspec/error.hpp"

namespace lspec::tools {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

RunConfig& RunConfig::set(const std::string& flag, const std::string& value) {
  for (auto& [k, v] : options_) {
    if (k == flag) {
      v = value;
      return *this;
    }
  }
  options_.emplace_back(flag, value);
  return *this;
}

std::string RunConfig::command_line() const {
  std::string s = "lspec " + command_;
  for (const auto& [k, v] : options_) {
    if (v == "true") {
      s += " --" + k;
    } else if (v == "false") {
      s += " --no-" + k;
    } else {
      s += " --" + k + " " + (v.empty() || v.find(' ') != std::string::npos ? "'" + v + "'" : v);
    }
  }
  return s;
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command_;
  auto& opts = j["options"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : options_) opts[k] = v;
  j["command_line"] = command_line();
  return j;
}

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw InvalidArgument("row width does not match the table header");
  rows.push_back(std::move(row));
}

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw InvalidArgument("format must be csv or json, got '" + text + "'");
}

namespace {

std::string csv_cell(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  } visit;
  return std::visit(visit, c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  struct {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double v) const { return v; }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(std::uint64_t v) const { return v; }
    nlohmann::ordered_json operator()(bool v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  } visit;
  return std::visit(visit, c);
}

}  // namespace

void write_csv(std::ostream& out, const Table& table, const RunConfig* config,
               const std::vector<std::string>& notes) {
  if (config) {
    out << "# " << config->command_line() << '\n';
    out << "# config " << config->to_json().dump() << '\n';
  }
  for (const auto& n : notes) out << "# " << n << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table, const RunConfig* config) {
  nlohmann::ordered_json j;
  if (config) j["config"] = config->to_json();
  j["columns"] = table.columns;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[table.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(r));
  }
  out << j.dump(2) << '\n';
}

void write_table(std::ostream& out, const Table& table, const RunConfig& config, Format format) {
  if (format == Format::csv) {
    write_csv(out, table, &config);
  } else {
    write_json(out, table, &config);
  }
}

OutputSink::OutputSink(const std::string& path) : out_(&std::cout) {
  if (path.empty() || path == "-") return;
  auto f = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
  if (!*f) throw Error("cannot open output file '" + path + "'");
  owned_ = std::move(f);
  out_ = owned_.get();
}

}  // namespace lspec::tools
