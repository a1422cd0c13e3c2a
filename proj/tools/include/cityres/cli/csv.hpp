#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace cityres::cli {

/// RFC-4180 writer: CRLF line ends, fields quoted when they hold a comma,
/// quote or line break. Numbers are printed with 10 significant digits.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void row(const std::vector<std::string>& fields);
  void row(std::initializer_list<std::string> fields) { row(std::vector<std::string>(fields)); }

  static std::string number(double v);
  static std::string number(long long v);
  static std::string number(int v) { return number(static_cast<long long>(v)); }
  static std::string number(std::size_t v) { return number(static_cast<long long>(v)); }

 private:
  std::ostream& out_;
};

}  // namespace cityres::cli
