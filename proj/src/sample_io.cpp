#include "tailtest/sample_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string_view>
#include <vector>

#include "tailtest/errors.hpp"

namespace tailtest {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s) {
  const auto hash = s.find('#');
  return trim(hash == std::string_view::npos ? s : s.substr(0, hash));
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(std::string_view field, std::size_t line) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = field.data() + field.size();
  if (!field.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("line " + std::to_string(line) + ": not a number: '" + std::string(field) + "'", line);
  }
  if (!std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line) + ": value is not finite", line);
  }
  return v;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::size_t column_index(const CsvTable& t, const std::string& name) {
  const auto it = std::find(t.header.begin(), t.header.end(), name);
  if (it == t.header.end()) throw InputError("column '" + name + "' not found in header");
  return static_cast<std::size_t>(it - t.header.begin());
}

CsvTable parse_csv(std::istream& in) {
  CsvTable t;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto body = strip_comment(raw);
    if (body.empty()) continue;
    const auto fields = split_fields(body);
    if (t.header.empty()) {
      for (auto f : fields) t.header.emplace_back(f);
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw ParseError("line " + std::to_string(line) + ": expected " + std::to_string(t.header.size()) +
                           " fields, found " + std::to_string(fields.size()),
                       line);
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (auto f : fields) row.push_back(parse_number(f, line));
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw InputError("input is empty");
  return t;
}

std::ifstream open_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

Sample parse_sample(std::istream& in, const std::optional<std::string>& column) {
  std::vector<double> values;
  if (column) {
    const auto table = parse_csv(in);
    const auto idx = column_index(table, *column);
    for (const auto& row : table.rows) values.push_back(row[idx]);
  } else {
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
      ++line;
      const auto body = strip_comment(raw);
      if (body.empty()) continue;
      values.push_back(parse_number(body, line));
    }
  }
  if (values.empty()) throw InputError("sample contains no values");
  return Sample(std::move(values));
}

Sample read_sample(const std::filesystem::path& path, const std::optional<std::string>& column) {
  auto in = open_file(path);
  try {
    return parse_sample(in, column);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::shared_ptr<const TableModel> read_table_model(const std::filesystem::path& path) {
  auto in = open_file(path);
  CsvTable table;
  try {
    table = parse_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
  const auto ix = column_index(table, "x");
  const auto iF = column_index(table, "F");
  std::vector<double> x, f;
  for (const auto& row : table.rows) {
    x.push_back(row[ix]);
    f.push_back(row[iF]);
  }
  return std::make_shared<const TableModel>(std::move(x), std::move(f));
}

std::string file_digest(const std::filesystem::path& path) {
  auto in = open_file(path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
    h ^= static_cast<unsigned char>(*it);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tailtest
