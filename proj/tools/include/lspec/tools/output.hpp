#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace lspec::tools {

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

// Every flag a command ran with, in a fixed order, so the exact run can be
// repeated from an output header.
class RunConfig {
 public:
  explicit RunConfig(std::string command) : command_(std::move(command)) {}

  RunConfig& set(const std::string& flag, const std::string& value);
  RunConfig& set(const std::string& flag, double value) { return set(flag, format_double(value)); }
  RunConfig& set(const std::string& flag, std::uint64_t value) { return set(flag, std::to_string(value)); }
  RunConfig& set(const std::string& flag, unsigned value) { return set(flag, std::to_string(value)); }
  RunConfig& set(const std::string& flag, bool value) { return set(flag, std::string(value ? "true" : "false")); }

  const std::string& command() const noexcept { return command_; }
  const std::vector<std::pair<std::string, std::string>>& options() const noexcept { return options_; }

  std::string command_line() const;
  nlohmann::ordered_json to_json() const;

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> options_;
};

using Cell = std::variant<std::monostate, double, std::int64_t, std::uint64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

enum class Format { csv, json };

Format parse_format(const std::string& text);

// `notes` become extra "# " header lines after the config.
void write_csv(std::ostream& out, const Table& table, const RunConfig* config,
               const std::vector<std::string>& notes = {});
void write_json(std::ostream& out, const Table& table, const RunConfig* config);
void write_table(std::ostream& out, const Table& table, const RunConfig& config, Format format);

// Opens `path` for binary writing ("-" or empty means stdout).
class OutputSink {
 public:
  explicit OutputSink(const std::string& path);
  std::ostream& stream() noexcept { return *out_; }

 private:
  std::unique_ptr<std::ostream> owned_;
  std::ostream* out_;
};

}  // namespace lspec::tools
