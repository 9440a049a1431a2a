#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace dayroute {

/// Splits a comma separated line. No quoting: none of the file formats
/// handled here ever embed commas in a field.
std::vector<std::string> split_csv_line(const std::string& line);

/// Line oriented reader for small CSV files. Validates the header up
/// front and reports problems with file name and line number.
class CsvReader {
public:
  /// Throws MissingFile if the file cannot be opened, ParseError if the
  /// header line does not match `expected_header` exactly.
  CsvReader(const std::filesystem::path& path, const std::string& expected_header);

  /// Reads the next data row. Returns false at end of file. Throws
  /// ParseError when the row has the wrong number of fields.
  bool next(std::vector<std::string>& fields);

  long line() const { return line_; }
  const std::string& file_name() const { return file_name_; }

  /// Parses a field as double / long long, with ParseError on garbage.
  double to_double(const std::string& field) const;
  long long to_int(const std::string& field) const;

private:
  std::ifstream in_;
  std::string file_name_;
  long line_ = 0;
  std::size_t n_fields_;
};

/// Fixed point decimal formatting, used everywhere a double is written to
/// an artifact so that output is byte stable.
std::string format_fixed(double value, int decimals);

/// Opens a file for writing, throwing IoError on failure and creating
/// parent directories as needed.
std::ofstream open_for_write(const std::filesystem::path& path);

}  // namespace dayroute
