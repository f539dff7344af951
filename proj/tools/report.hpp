#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace tailtest::cli {

struct SideResult {
  std::string side;                // "right" or "left"
  std::optional<double> statistic; // empty when infinite
  bool infinite = false;
  std::uint64_t clamped_count = 0;
  double p = 1.0;
  std::string method;
  double error_estimate = 0.0;
  bool fallback = false;

  bool operator==(const SideResult&) const = default;
};

struct TestReport {
  std::string tool_version;
  std::string timestamp;
  std::string sample_path;
  std::string sample_digest;
  std::uint64_t n = 0;
  double sample_min = 0.0;
  double sample_max = 0.0;
  std::string distribution;
  double a = 1.0;
  double alpha = 1.0;
  std::string method_policy;
  std::vector<SideResult> results;
  // Bonferroni combination min(1, 2 min(p_R, p_L)), present for side "both".
  std::optional<double> combined_p;
  std::vector<std::string> warnings;

  bool operator==(const TestReport&) const = default;
};

nlohmann::ordered_json to_json(const TestReport& report);
TestReport test_report_from_json(const nlohmann::json& j);
std::string to_text(const TestReport& report);

// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace tailtest::cli
