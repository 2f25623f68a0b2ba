#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace scg {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// Writes `content` to a sibling temp file and renames it over `path`.
void write_text_atomic(const std::filesystem::path& path, std::string_view content);

/// Splits a line on `sep` without trimming.
std::vector<std::string> split(std::string_view line, char sep);

std::string_view trim(std::string_view text) noexcept;

double parse_double(std::string_view text);

/// Builds a CSV document row by row.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  CsvWriter& cell(std::string_view text);
  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(unsigned long long v);
  CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(unsigned v) { return cell(static_cast<unsigned long long>(v)); }
  CsvWriter& cell(long v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(unsigned long v) { return cell(static_cast<unsigned long long>(v)); }
  CsvWriter& cell(bool v) { return cell(std::string_view(v ? "1" : "0")); }
  void end_row();

  const std::string& str() const noexcept { return text_; }
  std::size_t rows() const noexcept { return rows_; }
  void save(const std::filesystem::path& path) const { write_text_atomic(path, text_); }

 private:
  std::size_t columns_;
  std::size_t in_row_ = 0;
  std::size_t rows_ = 0;
  std::string text_;
};

}  // namespace scg
