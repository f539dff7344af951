#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "report.hpp"
#include "tailtest/tailtest.h"

namespace {

using tailtest::cli::SideResult;
using tailtest::cli::TestReport;

struct Failure {
  int exit_code;
  std::string message;
};

void check(tt_status status) {
  if (status == TT_OK) return;
  std::string message = tt_last_error();
  if (message.empty()) message = tt_status_string(status);
  throw Failure{status == TT_ERR_CONVERGENCE ? 2 : 1, message};
}

[[noreturn]] void input_error(const std::string& message) { throw Failure{1, message}; }

struct ModelDeleter {
  void operator()(tt_model* m) const { tt_model_free(m); }
};
struct SampleDeleter {
  void operator()(tt_sample* s) const { tt_sample_free(s); }
};
using Model = std::unique_ptr<tt_model, ModelDeleter>;
using SamplePtr = std::unique_ptr<tt_sample, SampleDeleter>;

Model parse_model(const std::string& spec) {
  tt_model* m = nullptr;
  check(tt_model_parse(spec.c_str(), &m));
  return Model(m);
}

SamplePtr read_sample(const std::string& path, const std::string& column) {
  tt_sample* s = nullptr;
  check(tt_sample_read(path.c_str(), column.empty() ? nullptr : column.c_str(), &s));
  return SamplePtr(s);
}

std::string describe(const tt_model* model) {
  char buf[512];
  check(tt_model_describe(model, buf, sizeof buf));
  return buf;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      input_error(std::string("bad value '") + item + "' in " + what);
    }
  }
  if (out.empty()) input_error(std::string(what) + " is empty");
  return out;
}

std::vector<tt_side> sides_for(const std::string& side) {
  if (side == "right") return {TT_SIDE_RIGHT};
  if (side == "left") return {TT_SIDE_LEFT};
  return {TT_SIDE_RIGHT, TT_SIDE_LEFT};
}

tt_method_policy policy_for(const std::string& method) {
  if (method == "exact") return TT_POLICY_EXACT;
  if (method == "asymptotic") return TT_POLICY_ASYMPTOTIC;
  if (method == "mc") return TT_POLICY_MONTE_CARLO;
  return TT_POLICY_AUTO;
}

// Writes to the named file, or stdout for "" / "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) input_error("cannot write '" + path + "'");
  out << text;
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

struct Common {
  std::string output = "text";
  std::uint64_t seed = 20240607;
  unsigned threads = 0;
  double rel_tol = 1e-8;
  double max_truncation = 1e6;
  std::uint64_t mc_replicates = 100000;
};

void add_common(CLI::App* cmd, Common& c, bool with_output) {
  if (with_output) {
    cmd->add_option("--output", c.output, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  }
  cmd->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads (0: TAILTEST_THREADS or all cores)")->capture_default_str();
  cmd->add_option("--rel-tol", c.rel_tol, "Relative tolerance of numerical inversion")->capture_default_str();
  cmd->add_option("--max-truncation", c.max_truncation, "Inversion cutoff in units of the kernel scale")
      ->capture_default_str();
  cmd->add_option("--mc-replicates", c.mc_replicates, "Monte Carlo replicates")->capture_default_str();
}

tt_pvalue_policy make_policy(const Common& c, const std::string& method) {
  tt_pvalue_policy p;
  tt_pvalue_policy_default(&p);
  p.method = policy_for(method);
  p.inversion.rel_tol = c.rel_tol;
  p.inversion.max_truncation = c.max_truncation;
  p.monte_carlo.replicates = c.mc_replicates;
  p.monte_carlo.seed = c.seed;
  p.monte_carlo.threads = c.threads;
  return p;
}

// ---- test -------------------------------------------------------------

struct TestArgs {
  Common common;
  std::string sample;
  std::string column;
  std::string dist;
  double a = 1.0;
  std::string side = "right";
  std::string method = "auto";
  double clamp_epsilon = 0.0;
};

int run_test(const TestArgs& args) {
  auto sample = read_sample(args.sample, args.column);
  auto model = parse_model(args.dist);
  const std::size_t n = tt_sample_size(sample.get());
  const double* data = tt_sample_data(sample.get());

  TestReport r;
  r.tool_version = tt_version();
  r.timestamp = tailtest::cli::utc_timestamp();
  r.sample_path = args.sample;
  char digest[17];
  check(tt_file_digest(args.sample.c_str(), digest));
  r.sample_digest = digest;
  r.n = n;
  r.sample_min = *std::min_element(data, data + n);
  r.sample_max = *std::max_element(data, data + n);
  r.distribution = describe(model.get());
  r.a = args.a;
  r.alpha = args.a / static_cast<double>(n);
  r.method_policy = args.method;

  const auto policy = make_policy(args.common, args.method);
  for (tt_side side : sides_for(args.side)) {
    tt_statistic stat;
    check(tt_compute_statistic(sample.get(), model.get(), args.a, side, args.clamp_epsilon, &stat));
    tt_pvalue pv;
    check(tt_p_value(stat.value, stat.infinite, args.a, static_cast<std::int64_t>(n), &policy, &pv));
    SideResult s;
    s.side = side == TT_SIDE_RIGHT ? "right" : "left";
    if (!stat.infinite) s.statistic = stat.value;
    s.infinite = stat.infinite != 0;
    s.clamped_count = stat.clamped_count;
    s.p = pv.p;
    s.method = tt_method_name(pv.method);
    s.error_estimate = pv.error_estimate;
    s.fallback = pv.fallback != 0;
    if (s.fallback) r.warnings.push_back(s.side + ": inversion did not converge, Monte Carlo p-value used");
    if (stat.clamped_count > 0) r.warnings.push_back(s.side + ": F = 1 clamped for " + std::to_string(stat.clamped_count) + " value(s)");
    r.results.push_back(std::move(s));
  }
  if (r.results.size() == 2) r.combined_p = std::min(1.0, 2.0 * std::min(r.results[0].p, r.results[1].p));

  if (args.common.output == "json") {
    std::cout << tailtest::cli::to_json(r).dump(2) << "\n";
  } else {
    std::cout << tailtest::cli::to_text(r);
  }
  return 0;
}

// ---- null-table -------------------------------------------------------

struct TableArgs {
  Common common;
  double a = 0.0;
  std::int64_t n = 0;
  double alpha = 0.0;
  std::string grid;
  double from = 0.0, to = 5.0;
  std::size_t points = 50;
  std::string out;
};

int run_null_table(const TableArgs& args) {
  const bool limit = args.alpha > 0.0;
  if (limit == (args.n > 0)) input_error("null-table needs either --a and --n, or --alpha");
  if (!limit && !(args.a > 0.0)) input_error("null-table needs --a > 0");

  std::vector<double> grid;
  if (!args.grid.empty()) {
    grid = parse_list(args.grid, "--grid");
  } else {
    if (args.points < 2 || !(args.to > args.from)) input_error("grid needs --points >= 2 and --to > --from");
    for (std::size_t i = 0; i < args.points; ++i) {
      grid.push_back(args.from + (args.to - args.from) * static_cast<double>(i) / static_cast<double>(args.points - 1));
    }
  }

  tt_inversion_settings settings;
  tt_inversion_settings_default(&settings);
  settings.rel_tol = args.common.rel_tol;
  settings.max_truncation = args.common.max_truncation;
  std::vector<double> values(grid.size()), errors(grid.size());
  std::string method;
  if (limit) {
    check(tt_limit_cdf_grid(grid.data(), grid.size(), args.alpha, &settings, values.data(), errors.data()));
    method = "asymptotic_integral";
  } else {
    check(tt_null_cdf_grid(grid.data(), grid.size(), args.a, args.n, &settings, values.data(), errors.data()));
    method = args.a == 1.0 ? "gamma_closed_form" : "inversion";
  }

  std::string csv = "sigma,G,method,error_estimate\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv += fmt("%.10g", grid[i]) + "," + fmt("%.12g", values[i]) + "," + method + "," + fmt("%.3g", errors[i]) + "\n";
  }
  emit(args.out, csv);
  return 0;
}

// ---- power --------------------------------------------------------------

struct PowerArgs {
  Common common;
  std::string null_spec;
  std::string alt_spec;
  std::size_t n = 100;
  std::string exponents = "1,2,4,8";
  std::string side = "right";
  std::string method = "auto";
  std::size_t replicates = 1000;
  double level = 0.05;
  bool no_ks = false;
  std::string out;
};

int run_power(const PowerArgs& args) {
  auto null_model = parse_model(args.null_spec);
  auto alt_model = parse_model(args.alt_spec);
  const auto exponents = parse_list(args.exponents, "--a");
  const auto sides = sides_for(args.side);

  tt_power_config cfg{};
  cfg.null_model = null_model.get();
  cfg.alternative = alt_model.get();
  cfg.n = args.n;
  cfg.exponents = exponents.data();
  cfg.exponent_count = exponents.size();
  cfg.sides = sides.data();
  cfg.side_count = sides.size();
  cfg.replicates = args.replicates;
  cfg.seed = args.common.seed;
  cfg.threads = args.common.threads;
  cfg.level = args.level;
  cfg.include_ks = args.no_ks ? 0 : 1;
  cfg.policy = make_policy(args.common, args.method);

  std::size_t count = 0;
  std::vector<tt_power_row> rows(exponents.size() * sides.size() + 1);
  check(tt_power_study(&cfg, rows.data(), rows.size(), &count));
  rows.resize(count);

  std::string csv = "test,a,side,n,replicates,rejections,power,std_error\n";
  for (const auto& r : rows) {
    const bool ks = std::string(r.test) == "KS";
    csv += std::string(r.test) + "," + (ks ? std::string() : fmt("%g", r.a)) + "," +
           (ks ? std::string() : (r.side == TT_SIDE_RIGHT ? "right" : "left")) + "," + std::to_string(args.n) + "," +
           std::to_string(r.replicates) + "," + std::to_string(r.rejections) + "," + fmt("%.6f", r.power) + "," +
           fmt("%.6f", r.std_error) + "\n";
  }
  emit(args.out, csv);
  return 0;
}

// ---- ks ------------------------------------------------------------------

struct KsArgs {
  Common common;
  std::string sample;
  std::string sample_b;
  std::string dist;
  std::string column;
};

int run_ks(const KsArgs& args) {
  if (args.sample_b.empty() == args.dist.empty()) input_error("ks needs exactly one of --sample-b or --dist");
  auto a = read_sample(args.sample, args.column);
  tt_ks res;
  std::string against;
  if (!args.sample_b.empty()) {
    auto b = read_sample(args.sample_b, args.column);
    check(tt_ks_two_sample(a.get(), b.get(), &res));
    against = args.sample_b;
  } else {
    auto model = parse_model(args.dist);
    check(tt_ks_one_sample(a.get(), model.get(), &res));
    against = describe(model.get());
  }
  if (args.common.output == "json") {
    nlohmann::ordered_json j;
    j["tool"] = "tailtest";
    j["version"] = tt_version();
    j["timestamp"] = tailtest::cli::utc_timestamp();
    j["sample"] = args.sample;
    j["against"] = against;
    j["D"] = res.distance;
    j["lambda"] = res.lambda;
    j["p"] = res.p;
    j["n_a"] = res.n_a;
    if (res.n_b_infinite) j["n_b"] = nullptr; else j["n_b"] = res.n_b;
    j["small_sample"] = res.small_sample != 0;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "sample  " << args.sample << " (n = " << res.n_a << ")\n";
    std::cout << "against " << against;
    if (!res.n_b_infinite) std::cout << " (n = " << res.n_b << ")";
    std::cout << "\n";
    std::printf("D = %.10g  lambda = %.10g  p = %.7g\n", res.distance, res.lambda, res.p);
    if (res.small_sample) std::cout << "warning: effective sample size below 20, asymptotic p may be inaccurate\n";
  }
  return 0;
}

// ---- mc-calibrate ---------------------------------------------------------

struct McArgs {
  Common common;
  double a = 1.0;
  std::int64_t n = 10;
  std::uint64_t chunk_size = 4096;
  std::size_t grid_points = 200;
};

int run_mc_calibrate(const McArgs& args) {
  tt_mc_settings mc;
  tt_mc_settings_default(&mc);
  mc.replicates = args.common.mc_replicates;
  mc.seed = args.common.seed;
  mc.chunk_size = args.chunk_size;
  mc.threads = args.common.threads;
  std::vector<double> draws(mc.replicates);
  check(tt_mc_sample_null(args.a, args.n, &mc, draws.data(), draws.size()));
  std::sort(draws.begin(), draws.end());

  // Compare at evenly spaced order statistics, using both one-sided ECDF
  // values at each point.
  const std::size_t points = std::max<std::size_t>(2, std::min(args.grid_points, draws.size()));
  std::vector<double> grid;
  std::vector<std::size_t> ranks;
  for (std::size_t i = 0; i < points; ++i) {
    const std::size_t k = (draws.size() - 1) * i / (points - 1);
    grid.push_back(draws[k]);
    ranks.push_back(k);
  }
  tt_inversion_settings settings;
  tt_inversion_settings_default(&settings);
  settings.rel_tol = args.common.rel_tol;
  settings.max_truncation = args.common.max_truncation;
  std::vector<double> cdf(grid.size());
  check(tt_null_cdf_grid(grid.data(), grid.size(), args.a, args.n, &settings, cdf.data(), nullptr));

  const double r = static_cast<double>(draws.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto upper = static_cast<double>(std::upper_bound(draws.begin(), draws.end(), grid[i]) - draws.begin());
    const auto lower = static_cast<double>(std::lower_bound(draws.begin(), draws.end(), grid[i]) - draws.begin());
    sup = std::max({sup, std::abs(upper / r - cdf[i]), std::abs(lower / r - cdf[i])});
  }
  const double band = std::sqrt(std::log(2.0 / 0.01) / (2.0 * r));
  double mean = 0.0;
  for (double v : draws) mean += v;
  mean /= r;
  double k1 = 0.0;
  check(tt_cumulant(1, args.a, args.n, &k1));

  if (args.common.output == "json") {
    nlohmann::ordered_json j;
    j["tool"] = "tailtest";
    j["version"] = tt_version();
    j["timestamp"] = tailtest::cli::utc_timestamp();
    j["a"] = args.a;
    j["n"] = args.n;
    j["replicates"] = mc.replicates;
    j["seed"] = mc.seed;
    j["chunk_size"] = mc.chunk_size;
    j["sup_distance"] = sup;
    j["dkw_band_1pct"] = band;
    j["within_band"] = sup <= band;
    j["mc_mean"] = mean;
    j["exact_mean"] = k1;
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("a = %g, n = %lld, %llu replicates (seed %llu)\n", args.a, static_cast<long long>(args.n),
                static_cast<unsigned long long>(mc.replicates), static_cast<unsigned long long>(mc.seed));
    std::printf("mean: Monte Carlo %.6f, exact %.6f\n", mean, k1);
    std::printf("sup |ECDF - G| = %.3g, 1%% DKW band %.3g: %s\n", sup, band, sup <= band ? "within" : "OUTSIDE");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tail-sensitive goodness-of-fit test"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tt_version()));

  TestArgs test;
  auto* cmd_test = app.add_subcommand("test", "Test a sample against a theoretical CDF");
  cmd_test->add_option("--sample", test.sample, "Sample file")->required();
  cmd_test->add_option("--column", test.column, "CSV column holding the sample");
  cmd_test->add_option("--dist", test.dist, "Theoretical CDF, e.g. normal(0,1) or table:cdf.csv")->required();
  cmd_test->add_option("--a", test.a, "Exponent a")->capture_default_str();
  cmd_test->add_option("--side", test.side, "Tail")->check(CLI::IsMember({"right", "left", "both"}))->capture_default_str();
  cmd_test->add_option("--method", test.method, "p-value method")
      ->check(CLI::IsMember({"auto", "exact", "asymptotic", "mc"}))
      ->capture_default_str();
  cmd_test->add_option("--clamp-epsilon", test.clamp_epsilon, "Replace F = 1 by 1 - eps (0: report infinite A)");
  add_common(cmd_test, test.common, true);

  TableArgs table;
  auto* cmd_table = app.add_subcommand("null-table", "Tabulate the null CDF G");
  cmd_table->add_option("--a", table.a, "Exponent a");
  cmd_table->add_option("--n", table.n, "Sample size n");
  cmd_table->add_option("--alpha", table.alpha, "Limit law with alpha = a/n (instead of --a/--n)");
  cmd_table->add_option("--grid", table.grid, "Comma-separated sigma values");
  cmd_table->add_option("--from", table.from, "Grid start")->capture_default_str();
  cmd_table->add_option("--to", table.to, "Grid end")->capture_default_str();
  cmd_table->add_option("--points", table.points, "Grid points")->capture_default_str();
  cmd_table->add_option("--out", table.out, "Output CSV (default stdout)");
  add_common(cmd_table, table.common, false);

  PowerArgs power;
  auto* cmd_power = app.add_subcommand("power", "Rejection rates under an alternative");
  cmd_power->add_option("--null", power.null_spec, "Hypothesized CDF")->required();
  cmd_power->add_option("--alt", power.alt_spec, "CDF the data are drawn from")->required();
  cmd_power->add_option("--n", power.n, "Sample size")->capture_default_str();
  cmd_power->add_option("--a", power.exponents, "Comma-separated exponents")->capture_default_str();
  cmd_power->add_option("--side", power.side, "Tail")->check(CLI::IsMember({"right", "left", "both"}))->capture_default_str();
  cmd_power->add_option("--method", power.method, "p-value method")
      ->check(CLI::IsMember({"auto", "exact", "asymptotic", "mc"}))
      ->capture_default_str();
  cmd_power->add_option("--replicates", power.replicates, "Simulated data sets")->capture_default_str();
  cmd_power->add_option("--level", power.level, "Significance level")->capture_default_str();
  cmd_power->add_flag("--no-ks", power.no_ks, "Skip the Kolmogorov baseline");
  cmd_power->add_option("--out", power.out, "Output CSV (default stdout)");
  add_common(cmd_power, power.common, false);

  KsArgs ks;
  auto* cmd_ks = app.add_subcommand("ks", "Kolmogorov / Smirnov baseline test");
  cmd_ks->add_option("--sample", ks.sample, "Sample file")->required();
  cmd_ks->add_option("--sample-b", ks.sample_b, "Second sample (two-sample test)");
  cmd_ks->add_option("--dist", ks.dist, "Theoretical CDF (one-sample test)");
  cmd_ks->add_option("--column", ks.column, "CSV column holding the samples");
  add_common(cmd_ks, ks.common, true);

  McArgs mcal;
  auto* cmd_mc = app.add_subcommand("mc-calibrate", "Compare Monte Carlo null draws with the computed null CDF");
  cmd_mc->add_option("--a", mcal.a, "Exponent a")->capture_default_str();
  cmd_mc->add_option("--n", mcal.n, "Sample size n")->capture_default_str();
  cmd_mc->add_option("--chunk-size", mcal.chunk_size, "Replicates per random stream")->capture_default_str();
  cmd_mc->add_option("--grid-points", mcal.grid_points, "Comparison points")->capture_default_str();
  add_common(cmd_mc, mcal.common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*cmd_test) return run_test(test);
    if (*cmd_table) return run_null_table(table);
    if (*cmd_power) return run_power(power);
    if (*cmd_ks) return run_ks(ks);
    if (*cmd_mc) return run_mc_calibrate(mcal);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
