#pragma once

#include <cstdint>
#include <string_view>

#include "tailtest/inversion.hpp"
#include "tailtest/mc_oracle.hpp"
#include "tailtest/null_dist.hpp"
#include "tailtest/statistic.hpp"

namespace tailtest {

enum class MethodPolicy { Auto, Exact, Asymptotic, MonteCarlo };

std::string_view to_string(MethodPolicy policy) noexcept;

struct PValuePolicy {
  MethodPolicy method = MethodPolicy::Auto;
  // Auto uses the limit law when both n and a reach these values.
  std::int64_t asymptotic_min_n = 50;
  double asymptotic_min_a = 50.0;
  // The limit law is evaluated by its series at and above this alpha.
  double series_min_alpha = 5.0;
  // Auto falls back to Monte Carlo when inversion fails to converge.
  bool monte_carlo_fallback = true;
  InversionSettings inversion;
  McSettings monte_carlo;
};

// p = P(A >= a_value) under the null, by the method the policy selects.
// An infinite statistic gives p = 0.
PValueReport p_value(double a_value, bool infinite, const NullSpec& spec, const PValuePolicy& policy = {});

inline PValueReport p_value(const StatisticResult& stat, const PValuePolicy& policy = {}) {
  return p_value(stat.value, stat.infinite, NullSpec(stat.a, static_cast<std::int64_t>(stat.n)), policy);
}

}  // namespace tailtest
