#include "tailtest/dist_spec.hpp"

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "tailtest/ecdf.hpp"
#include "tailtest/errors.hpp"
#include "tailtest/sample_io.hpp"

namespace tailtest {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

// Splits on commas that are not nested inside parentheses.
std::vector<std::string_view> split_top_level(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth < 0) throw InputError("unbalanced parentheses in distribution spec");
    if (s[i] == ',' && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw InputError("unbalanced parentheses in distribution spec");
  out.push_back(trim(s.substr(start)));
  return out;
}

double number(std::string_view text, std::string_view spec) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw InputError("bad number '" + std::string(text) + "' in distribution spec '" + std::string(spec) + "'");
  }
  return v;
}

}  // namespace

CdfModelPtr parse_distribution(std::string_view spec) {
  spec = trim(spec);
  if (spec.starts_with("table:")) return read_table_model(std::string(spec.substr(6)));
  if (spec.starts_with("ecdf:")) {
    std::vector<Sample> samples;
    for (auto path : split_top_level(spec.substr(5))) {
      if (path.empty()) throw InputError("empty path in ecdf spec");
      samples.push_back(read_sample(std::string(path)));
    }
    return std::make_shared<const AveragedEcdf>(samples);
  }

  const auto open = spec.find('(');
  if (open == std::string_view::npos || spec.back() != ')') {
    throw InputError("unrecognized distribution spec '" + std::string(spec) + "'");
  }
  const auto name = trim(spec.substr(0, open));
  const auto args = split_top_level(spec.substr(open + 1, spec.size() - open - 2));
  auto expect = [&](std::size_t count) {
    if (args.size() != count) {
      throw InputError(std::string(name) + " expects " + std::to_string(count) + " arguments");
    }
  };

  if (name == "uniform") {
    expect(2);
    return std::make_shared<const UniformModel>(number(args[0], spec), number(args[1], spec));
  }
  if (name == "normal") {
    expect(2);
    return std::make_shared<const NormalModel>(number(args[0], spec), number(args[1], spec));
  }
  if (name == "exponential") {
    expect(1);
    return std::make_shared<const ExponentialModel>(number(args[0], spec));
  }
  if (name == "mix") {
    expect(3);
    return std::make_shared<const MixtureModel>(number(args[0], spec), parse_distribution(args[1]),
                                                parse_distribution(args[2]));
  }
  throw InputError("unknown distribution '" + std::string(name) + "'");
}

}  // namespace tailtest
