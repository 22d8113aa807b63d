#pragma once

#include "hardy/probes.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace hardy {

/// 17 significant digits, locale independent, so that files compare byte for byte.
std::string format_double(double x);

/// Comma-separated table with a header row and '\n' line ends.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  void add_numbers(const std::vector<double>& values);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Columns k, R, h, value, residual.
CsvTable levels_table(const VerificationReport& report);

/// Reads the rows written by levels_table. ConfigError on a malformed header or row.
std::vector<LevelRecord> parse_levels_csv(const std::string& text);

/// Writes the whole content; ConfigError when the file cannot be written.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Pretty JSON with a trailing newline.
std::string json_text(const nlohmann::json& j);

}  // namespace hardy
