#include "fognet/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fognet {

namespace {

std::string format_with(const char* fmt, double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  std::string s(buf);
  // snprintf follows LC_NUMERIC; force a point separator.
  for (auto& c : s) {
    if (c == ',') c = '.';
  }
  return s;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_number(double v) { return format_with("%.10g", v); }
std::string format_exact(double v) { return format_with("%.17g", v); }

void CsvTable::add_metadata(const std::string& key, const std::string& value) {
  metadata_.emplace_back(key, value);
}

void CsvTable::add_row(std::vector<CsvCell> row) {
  if (row.size() != header_.size()) {
    throw std::invalid_argument("csv row has " + std::to_string(row.size()) + " cells, header has " +
                                std::to_string(header_.size()));
  }
  std::vector<std::string> cells;
  cells.reserve(row.size());
  for (const auto& c : row) {
    if (const auto* d = std::get_if<double>(&c)) {
      cells.push_back(format_number(*d));
    } else if (const auto* i = std::get_if<std::int64_t>(&c)) {
      cells.push_back(std::to_string(*i));
    } else {
      cells.push_back(quote(std::get<std::string>(c)));
    }
  }
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::ostringstream out;
  for (const auto& [k, v] : metadata_) out << "# " << k << ": " << v << '\n';
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out.str();
}

void CsvTable::write(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << str();
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace fognet
