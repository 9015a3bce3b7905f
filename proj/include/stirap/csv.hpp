#pragma once

// CSV dialect for every data file: comma separated, LF line endings, a '#'
// comment preamble, floats printed with 12 significant digits.

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stirap {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "%.12g".
std::string format_number(double x);

class CsvWriter {
 public:
  /// Throws IoError if the file cannot be created.
  explicit CsvWriter(const std::filesystem::path& path);

  void comment(std::string_view key, std::string_view value);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);

  /// Flushes and throws IoError if any write failed.
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

struct CsvTable {
  std::vector<std::string> comments; // raw "key=value" strings, without '#'
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(std::string_view name) const;
};

/// Reads files produced by CsvWriter. Throws IoError on failure.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace stirap
