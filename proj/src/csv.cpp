#include "splinepdf/csv.hpp"

#include "splinepdf/error.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <cmath>
#include <string_view>

namespace splinepdf::csv {

namespace {

std::vector<std::string_view> split(std::string_view line)
{
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_number(std::string_view text, std::size_t row, std::string_view column)
{
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw Error(ErrorCode::ParseError,
                "row " + std::to_string(row) + ", column '" + std::string(column) + "': cannot parse '" +
                  std::string(text) + "' as a finite number");
  }
  return value;
}

std::vector<std::vector<double>> read_named(const std::filesystem::path& path,
                                            const std::vector<std::string>& names)
{
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  }
  std::string line;
  if (!std::getline(in, line) || trim(line).empty()) {
    throw Error(ErrorCode::ParseError, "'" + path.string() + "' is empty (no header row)");
  }
  const auto header = split(line);
  std::vector<std::size_t> index;
  for (const auto& name : names) {
    std::size_t found = header.size();
    for (std::size_t k = 0; k < header.size(); ++k) {
      if (trim(header[k]) == name) {
        found = k;
        break;
      }
    }
    if (found == header.size()) {
      throw Error(ErrorCode::ParseError, "'" + path.string() + "' has no column '" + name + "'");
    }
    index.push_back(found);
  }

  std::vector<std::vector<double>> columns(names.size());
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) {
      continue;
    }
    const auto fields = split(line);
    for (std::size_t c = 0; c < names.size(); ++c) {
      if (index[c] >= fields.size()) {
        throw Error(ErrorCode::ParseError,
                    "row " + std::to_string(row) + ", column '" + names[c] + "': missing field");
      }
      columns[c].push_back(parse_number(fields[index[c]], row, names[c]));
    }
  }
  if (columns.front().empty()) {
    throw Error(ErrorCode::ParseError, "'" + path.string() + "' has no data rows");
  }
  return columns;
}

std::ofstream open_output(const std::filesystem::path& path)
{
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  }
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path)
{
  out.flush();
  if (!out) {
    throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
  }
}

} // namespace

std::string format_double(double v)
{
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::vector<double> read_column(const std::filesystem::path& path, const std::string& column)
{
  return std::move(read_named(path, {column}).front());
}

std::pair<std::vector<double>, std::vector<double>> read_columns(const std::filesystem::path& path,
                                                                 const std::string& first,
                                                                 const std::string& second)
{
  auto columns = read_named(path, {first, second});
  return {std::move(columns[0]), std::move(columns[1])};
}

void write_corpus(const std::filesystem::path& path, const std::vector<TimeSeries>& corpus)
{
  auto out = open_output(path);
  out << "series_id,t,x\n";
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const auto& series = corpus[s];
    for (std::size_t k = 0; k < series.t.size(); ++k) {
      out << s << ',' << format_double(series.t[k]) << ',' << format_double(series.x[k]) << '\n';
    }
  }
  finish(out, path);
}

void write_histogram(const std::filesystem::path& path, const Histogram& hist)
{
  auto out = open_output(path);
  out << "left,right,height\n";
  for (std::size_t i = 0; i < hist.bin_count(); ++i) {
    out << format_double(hist.edges[i]) << ',' << format_double(hist.edges[i + 1]) << ','
        << format_double(hist.heights[i]) << '\n';
  }
  finish(out, path);
}

void write_curve(const std::filesystem::path& path, const std::vector<double>& u, const std::vector<double>& pdf)
{
  auto out = open_output(path);
  out << "u,pdf\n";
  for (std::size_t k = 0; k < u.size(); ++k) {
    out << format_double(u[k]) << ',' << format_double(pdf[k]) << '\n';
  }
  finish(out, path);
}

} // namespace splinepdf::csv
