#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace fognet {

inline constexpr const char* kToolVersion = "0.3.0";

/// %.10g in the C locale; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double v);
/// Round-trip exact form (%.17g).
std::string format_exact(double v);

using CsvCell = std::variant<double, std::int64_t, std::string>;

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_metadata(const std::string& key, const std::string& value);
  /// Throws std::invalid_argument when the row width differs from the header.
  void add_row(std::vector<CsvCell> row);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::pair<std::string, std::string>> metadata_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace fognet
