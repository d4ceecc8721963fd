#include "csv_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <optional>

#include <fmt/format.h>

namespace spatialsign::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    std::vector<double> row;
    row.reserve(fields.size());
    std::optional<std::size_t> bad;
    for (std::size_t k = 0; k < fields.size(); ++k) {
      const auto v = to_double(fields[k]);
      if (!v) {
        bad = k;
        break;
      }
      row.push_back(*v);
    }
    if (bad) {
      if (rows.empty() && header.empty()) {
        for (auto f : fields) header.emplace_back(f);
        width = fields.size();
        continue;
      }
      throw CsvError(fmt::format("field {} ('{}') is not a number", *bad + 1, fields[*bad]),
                     lineno);
    }
    if (width == 0) width = row.size();
    if (row.size() != width) {
      throw CsvError(fmt::format("expected {} fields, found {}", width, row.size()), lineno);
    }
    for (double v : row) {
      if (!std::isfinite(v)) throw CsvError("non-finite value", lineno);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw CsvError("no data rows", lineno == 0 ? 1 : lineno);

  Matrix x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return CsvTable{std::move(header), DataMatrix(std::move(x))};
}

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (auto f : split(text)) {
    const auto v = to_double(f);
    if (!v || !std::isfinite(*v)) {
      throw InvalidInput(fmt::format("'{}' is not a real number", f));
    }
    out.push_back(*v);
  }
  return out;
}

}  // namespace spatialsign::cli
