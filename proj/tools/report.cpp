#include "report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

namespace tailtest::cli {

nlohmann::ordered_json to_json(const TestReport& r) {
  nlohmann::ordered_json j;
  j["tool"] = "tailtest";
  j["version"] = r.tool_version;
  j["timestamp"] = r.timestamp;
  j["input"] = {{"path", r.sample_path}, {"digest", r.sample_digest}, {"n", r.n},
                {"min", r.sample_min},    {"max", r.sample_max}};
  j["distribution"] = r.distribution;
  j["a"] = r.a;
  j["alpha"] = r.alpha;
  j["method_policy"] = r.method_policy;
  auto results = nlohmann::ordered_json::array();
  for (const auto& s : r.results) {
    nlohmann::ordered_json e;
    e["side"] = s.side;
    if (s.statistic) e["statistic"] = *s.statistic; else e["statistic"] = nullptr;
    e["infinite"] = s.infinite;
    e["clamped_count"] = s.clamped_count;
    e["p"] = s.p;
    e["method"] = s.method;
    e["error_estimate"] = s.error_estimate;
    e["fallback"] = s.fallback;
    results.push_back(std::move(e));
  }
  j["results"] = std::move(results);
  if (r.combined_p) {
    j["combined"] = {{"rule", "bonferroni"}, {"p", *r.combined_p}};
  }
  j["warnings"] = r.warnings;
  return j;
}

TestReport test_report_from_json(const nlohmann::json& j) {
  TestReport r;
  r.tool_version = j.at("version").get<std::string>();
  r.timestamp = j.at("timestamp").get<std::string>();
  const auto& in = j.at("input");
  r.sample_path = in.at("path").get<std::string>();
  r.sample_digest = in.at("digest").get<std::string>();
  r.n = in.at("n").get<std::uint64_t>();
  r.sample_min = in.at("min").get<double>();
  r.sample_max = in.at("max").get<double>();
  r.distribution = j.at("distribution").get<std::string>();
  r.a = j.at("a").get<double>();
  r.alpha = j.at("alpha").get<double>();
  r.method_policy = j.at("method_policy").get<std::string>();
  for (const auto& e : j.at("results")) {
    SideResult s;
    s.side = e.at("side").get<std::string>();
    if (!e.at("statistic").is_null()) s.statistic = e.at("statistic").get<double>();
    s.infinite = e.at("infinite").get<bool>();
    s.clamped_count = e.at("clamped_count").get<std::uint64_t>();
    s.p = e.at("p").get<double>();
    s.method = e.at("method").get<std::string>();
    s.error_estimate = e.at("error_estimate").get<double>();
    s.fallback = e.at("fallback").get<bool>();
    r.results.push_back(std::move(s));
  }
  if (j.contains("combined")) r.combined_p = j.at("combined").at("p").get<double>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

std::string to_text(const TestReport& r) {
  std::ostringstream out;
  char buf[256];
  out << "sample       " << r.sample_path << " (n = " << r.n << ", range [" << r.sample_min << ", "
      << r.sample_max << "])\n";
  out << "distribution " << r.distribution << "\n";
  std::snprintf(buf, sizeof buf, "a = %g, alpha = a/n = %.6g, method policy %s\n", r.a, r.alpha,
                r.method_policy.c_str());
  out << buf;
  for (const auto& s : r.results) {
    if (s.infinite) {
      std::snprintf(buf, sizeof buf, "%-5s A = inf (F = 1 reached)  p = 0\n", s.side.c_str());
    } else {
      std::snprintf(buf, sizeof buf, "%-5s A = %.10g  p = %.6g  [%s, error %.2g]%s\n", s.side.c_str(),
                    *s.statistic, s.p, s.method.c_str(), s.error_estimate,
                    s.fallback ? " (Monte Carlo fallback)" : "");
    }
    out << buf;
  }
  if (r.combined_p) {
    std::snprintf(buf, sizeof buf, "both  p = %.6g (Bonferroni, 2 x min)\n", *r.combined_p);
    out << buf;
  }
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  return out.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace tailtest::cli
