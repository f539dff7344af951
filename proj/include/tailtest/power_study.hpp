#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tailtest/cdf_model.hpp"
#include "tailtest/pvalue.hpp"
#include "tailtest/statistic.hpp"

namespace tailtest {

struct PowerStudyConfig {
  CdfModelPtr null_model;   // hypothesized CDF the data are tested against
  CdfModelPtr alternative;  // CDF the data are drawn from
  std::size_t n = 100;
  std::vector<double> exponents{1.0, 2.0, 4.0, 8.0};
  std::vector<TailSide> sides{TailSide::Right};
  std::size_t replicates = 1000;
  std::uint64_t seed = 20240607;
  unsigned threads = 0;  // 0: resolve from TAILTEST_THREADS / hardware
  double level = 0.05;
  bool include_ks = true;
  PValuePolicy policy;
};

struct PowerRow {
  std::string test;  // "A" or "KS"
  double a = 0.0;    // 0 for KS
  TailSide side = TailSide::Right;
  std::size_t rejections = 0;
  std::size_t replicates = 0;
  double power = 0.0;
  double std_error = 0.0;
};

// Replicate r draws its data from stream (seed, r), so the table does not
// depend on the number of workers.
std::vector<PowerRow> power_study(const PowerStudyConfig& config);

}  // namespace tailtest
