#include "varsel/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "varsel/errors.hpp"

namespace varsel {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_number(const std::string& field, std::size_t row,
                    const std::string& column) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r'))
    --end;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw DataError("csv: row " + std::to_string(row) + ", column '" + column +
                    "': cannot parse '" + field + "' as a number");
  return value;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& response,
                 const std::vector<std::string>& binary_columns) {
  std::ifstream in(path);
  if (!in) throw IoError("csv: cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw DataError("csv: '" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split_line(line);
  for (auto& h : header) {
    while (!h.empty() && (h.back() == ' ' || h.back() == '\r')) h.pop_back();
    while (!h.empty() && h.front() == ' ') h.erase(h.begin());
  }

  const auto resp_it = std::find(header.begin(), header.end(), response);
  if (resp_it == header.end())
    throw UnknownColumnError("csv: response column '" + response +
                             "' not found in '" + path + "'");
  const std::size_t resp_idx =
      static_cast<std::size_t>(resp_it - header.begin());

  std::set<std::string> binary(binary_columns.begin(), binary_columns.end());
  if (binary.count(response))
    throw ConfigError("csv: response column '" + response +
                      "' cannot be marked binary");
  for (const auto& b : binary_columns)
    if (std::find(header.begin(), header.end(), b) == header.end())
      throw UnknownColumnError("csv: binary column '" + b + "' not found in '" +
                               path + "'");

  std::vector<std::vector<double>> rows;
  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_line(line);
    if (fields.size() != header.size())
      throw DataError("csv: row " + std::to_string(row_no) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(header.size()));
    std::vector<double> row(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j)
      row[j] = parse_number(fields[j], row_no, header[j]);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("csv: '" + path + "' has no data rows");

  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index m = static_cast<Eigen::Index>(header.size()) - 1;
  Dataset d;
  d.y.resize(n);
  d.X.resize(n, m);
  for (std::size_t j = 0, col = 0; j < header.size(); ++j) {
    if (j == resp_idx) continue;
    d.columns.push_back({header[j], ColumnKind::base,
                         binary.count(header[j]) > 0, {}});
    for (Eigen::Index i = 0; i < n; ++i)
      d.X(i, static_cast<Eigen::Index>(col)) = rows[static_cast<std::size_t>(i)][j];
    ++col;
  }
  for (Eigen::Index i = 0; i < n; ++i)
    d.y(i) = rows[static_cast<std::size_t>(i)][resp_idx];

  for (Eigen::Index j = 0; j < m; ++j) {
    if (!d.columns[static_cast<std::size_t>(j)].is_binary) continue;
    std::set<double> levels;
    for (Eigen::Index i = 0; i < n; ++i) levels.insert(d.X(i, j));
    if (levels.size() > 2)
      throw DataError("csv: column '" + d.columns[static_cast<std::size_t>(j)].name +
                      "' declared binary but has " +
                      std::to_string(levels.size()) + " distinct values");
  }
  d.validate();
  return d;
}

}  // namespace varsel
