#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tailtest/cdf_model.hpp"

namespace tailtest {

enum class TailSide { Right, Left };

std::string_view to_string(TailSide side) noexcept;

// Nonempty collection of finite observations.
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }

 private:
  std::vector<double> values_;
  double min_ = 0.0;
  double max_ = 0.0;
};

// Coarse-grained sample: bin positions (strictly increasing) with counts.
class BinnedSample {
 public:
  BinnedSample(std::vector<double> positions, std::vector<std::uint64_t> counts);

  std::span<const double> positions() const noexcept { return positions_; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::uint64_t total() const noexcept { return total_; }

  // Each position repeated by its count.
  Sample expand() const;

 private:
  std::vector<double> positions_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

struct StatisticOptions {
  // When set, a transformed F-value of 1 is replaced by 1 - clamp_epsilon
  // instead of producing an infinite statistic.
  std::optional<double> clamp_epsilon;
};

struct StatisticResult {
  double value = 0.0;  // +inf when `infinite`
  bool infinite = false;
  TailSide side = TailSide::Right;
  double a = 1.0;
  std::size_t n = 0;
  std::size_t clamped_count = 0;
};

// Tolerance for CDF values slightly outside [0, 1]; such values are snapped.
inline constexpr double kCdfSnapTolerance = 1e-12;

// F(x_i) in input order, snapped into [0, 1]. Throws InvalidModelError when a
// value is NaN or outside [0, 1] by more than kCdfSnapTolerance.
std::vector<double> probability_transform(const Sample& sample, const CdfModel& model);

// -ln(1 - f^a), evaluated through a ln f so that f near 1 keeps full precision.
double tail_term(double f, double a);

// A = -(a/n) sum ln(1 - F_i^a) on already transformed values F_i = F(x_i).
// The left statistic uses 1 - F_i.
StatisticResult a_statistic_from_cdf_values(std::span<const double> cdf_values, double a,
                                            TailSide side, const StatisticOptions& options = {});

StatisticResult a_statistic(const Sample& sample, const CdfModel& model, double a, TailSide side,
                            const StatisticOptions& options = {});

// A = -(a/N) sum_i d_i ln(1 - F(x_i)^a).
StatisticResult a_statistic_binned(const BinnedSample& binned, const CdfModel& model, double a,
                                   TailSide side, const StatisticOptions& options = {});

}  // namespace tailtest
