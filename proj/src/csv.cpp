#include "dayroute/csv.hpp"

#include <cstdio>
#include <cstdlib>

#include "dayroute/errors.hpp"

namespace dayroute {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

namespace {

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

CsvReader::CsvReader(const std::filesystem::path& path,
                     const std::string& expected_header)
    : in_(path), file_name_(path.string()) {
  if (!in_) throw MissingFile(file_name_);
  std::string header;
  if (!std::getline(in_, header)) {
    throw ParseError(file_name_, 1, "empty file, expected header '" +
                                        expected_header + "'");
  }
  ++line_;
  header = strip_cr(header);
  if (header != expected_header) {
    throw ParseError(file_name_, 1, "bad header '" + header + "', expected '" +
                                        expected_header + "'");
  }
  n_fields_ = split_csv_line(expected_header).size();
}

bool CsvReader::next(std::vector<std::string>& fields) {
  std::string row;
  while (std::getline(in_, row)) {
    ++line_;
    row = strip_cr(row);
    if (row.empty()) continue;  // tolerate a trailing blank line
    fields = split_csv_line(row);
    if (fields.size() != n_fields_) {
      throw ParseError(file_name_, line_,
                       "expected " + std::to_string(n_fields_) +
                           " fields, got " + std::to_string(fields.size()));
    }
    return true;
  }
  return false;
}

double CsvReader::to_double(const std::string& field) const {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0') {
    throw ParseError(file_name_, line_, "not a number: '" + field + "'");
  }
  return v;
}

long long CsvReader::to_int(const std::string& field) const {
  char* end = nullptr;
  const long long v = std::strtoll(field.c_str(), &end, 10);
  if (end == field.c_str() || *end != '\0') {
    throw ParseError(file_name_, line_, "not an integer: '" + field + "'");
  }
  return v;
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace dayroute
