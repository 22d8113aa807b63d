#include "hardy/io.hpp"

#include "hardy/common.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace hardy {

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw ConfigError("CsvTable needs at least one column");
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw ConfigError("CsvTable row has " + std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(header_.size()));
  }
  rows_.push_back(std::move(cells));
}

void CsvTable::add_numbers(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  add_row(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

CsvTable levels_table(const VerificationReport& report) {
  CsvTable t({"k", "R", "h", report.value_name.empty() ? "value" : report.value_name, "residual"});
  for (const auto& l : report.levels) {
    t.add_row({std::to_string(l.k), format_double(l.R), format_double(l.h), format_double(l.value),
               format_double(l.residual)});
  }
  return t;
}

namespace {

double parse_number(const std::string& s) {
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw ConfigError("not a number: '" + s + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

std::vector<LevelRecord> parse_levels_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("levels CSV is empty");
  const auto header = split(line);
  if (header.size() != 5 || header[0] != "k" || header[1] != "R" || header[2] != "h" ||
      header[4] != "residual") {
    throw ConfigError("levels CSV has an unexpected header: " + line);
  }
  std::vector<LevelRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != 5) throw ConfigError("levels CSV row has " + std::to_string(c.size()) + " cells");
    out.push_back({static_cast<int>(parse_number(c[0])), parse_number(c[1]), parse_number(c[2]),
                   parse_number(c[3]), parse_number(c[4])});
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw ConfigError("write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace hardy
