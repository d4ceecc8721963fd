#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "spatialsign/error.hpp"
#include "spatialsign/location_scale.hpp"

namespace spatialsign::cli {

/// Malformed CSV input; line() is 1-based.
class CsvError : public InvalidInput {
 public:
  CsvError(const std::string& what, std::size_t line)
      : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct CsvTable {
  std::vector<std::string> header;  // empty when the file has none
  DataMatrix data;
};

/// Comma-separated numeric table, one observation per row. A first row that
/// does not parse as numbers is taken as the header. Blank lines are skipped.
CsvTable read_csv(std::istream& in);

/// Shortest representation that reads back to the same double (17 digits).
std::string format_double(double x);

/// Comma-separated list of reals, e.g. "0.8,0.2".
std::vector<double> parse_real_list(const std::string& text);

}  // namespace spatialsign::cli
