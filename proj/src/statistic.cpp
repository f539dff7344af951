#include "tailtest/statistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "tailtest/errors.hpp"
#include "tailtest/specfun.hpp"

namespace tailtest {

std::string_view to_string(TailSide side) noexcept {
  return side == TailSide::Right ? "right" : "left";
}

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("sample is empty");
  for (double v : values_) {
    if (!std::isfinite(v)) throw InputError("sample contains a non-finite value");
  }
  const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  min_ = *lo;
  max_ = *hi;
}

BinnedSample::BinnedSample(std::vector<double> positions, std::vector<std::uint64_t> counts)
    : positions_(std::move(positions)), counts_(std::move(counts)) {
  if (positions_.empty()) throw InputError("binned sample has no bins");
  if (positions_.size() != counts_.size()) throw InputError("bin positions and counts differ in length");
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (!std::isfinite(positions_[i])) throw InputError("bin position must be finite");
    if (counts_[i] == 0) throw InputError("bin counts must be positive");
    if (i > 0 && !(positions_[i] > positions_[i - 1])) {
      throw InputError("bin positions must be strictly increasing");
    }
    total_ += counts_[i];
  }
}

Sample BinnedSample::expand() const {
  std::vector<double> out;
  out.reserve(total_);
  for (std::size_t i = 0; i < positions_.size(); ++i) out.insert(out.end(), counts_[i], positions_[i]);
  return Sample(std::move(out));
}

namespace {

double snap_cdf_value(double f) {
  if (std::isnan(f) || f < -kCdfSnapTolerance || f > 1.0 + kCdfSnapTolerance) {
    throw InvalidModelError("CDF model returned " + std::to_string(f) + ", outside [0,1]");
  }
  return std::clamp(f, 0.0, 1.0);
}

void require_exponent(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InputError("exponent a must be a positive finite number");
}

struct Weighted {
  double f;
  std::uint64_t count;
};

// Shared accumulation. `terms` hold side-transformed values; ascending order
// fixes the summation order so results do not depend on input order.
StatisticResult accumulate(std::vector<Weighted> terms, std::uint64_t total, double a, TailSide side,
                           const StatisticOptions& options) {
  StatisticResult result;
  result.side = side;
  result.a = a;
  result.n = static_cast<std::size_t>(total);

  std::sort(terms.begin(), terms.end(), [](const Weighted& l, const Weighted& r) { return l.f < r.f; });

  double sum = 0.0;
  double compensation = 0.0;
  for (const auto& t : terms) {
    double f = t.f;
    if (options.clamp_epsilon && f > 1.0 - *options.clamp_epsilon) {
      f = 1.0 - *options.clamp_epsilon;
      result.clamped_count += t.count;
    }
    if (f >= 1.0) {
      result.infinite = true;
      continue;
    }
    const double term = static_cast<double>(t.count) * tail_term(f, a);
    const double next = sum + term;
    compensation += std::abs(sum) >= std::abs(term) ? (sum - next) + term : (term - next) + sum;
    sum = next;
  }
  result.value = result.infinite ? std::numeric_limits<double>::infinity()
                                 : a / static_cast<double>(total) * (sum + compensation);
  return result;
}

void require_clamp(const StatisticOptions& options) {
  if (options.clamp_epsilon && !(*options.clamp_epsilon > 0.0 && *options.clamp_epsilon < 1.0)) {
    throw InputError("clamp epsilon must lie in (0,1)");
  }
}

}  // namespace

std::vector<double> probability_transform(const Sample& sample, const CdfModel& model) {
  std::vector<double> out;
  out.reserve(sample.size());
  for (double x : sample.values()) out.push_back(snap_cdf_value(model.cdf(x)));
  return out;
}

double tail_term(double f, double a) {
  if (f <= 0.0) return 0.0;
  return -specfun::log1mexp(a * std::log(f));
}

StatisticResult a_statistic_from_cdf_values(std::span<const double> cdf_values, double a,
                                            TailSide side, const StatisticOptions& options) {
  require_exponent(a);
  require_clamp(options);
  if (cdf_values.empty()) throw InputError("sample is empty");
  std::vector<Weighted> terms;
  terms.reserve(cdf_values.size());
  for (double raw : cdf_values) {
    const double f = snap_cdf_value(raw);
    terms.push_back({side == TailSide::Right ? f : 1.0 - f, 1});
  }
  return accumulate(std::move(terms), cdf_values.size(), a, side, options);
}

StatisticResult a_statistic(const Sample& sample, const CdfModel& model, double a, TailSide side,
                            const StatisticOptions& options) {
  return a_statistic_from_cdf_values(probability_transform(sample, model), a, side, options);
}

StatisticResult a_statistic_binned(const BinnedSample& binned, const CdfModel& model, double a,
                                   TailSide side, const StatisticOptions& options) {
  require_exponent(a);
  require_clamp(options);
  std::vector<Weighted> terms;
  terms.reserve(binned.positions().size());
  for (std::size_t i = 0; i < binned.positions().size(); ++i) {
    const double f = snap_cdf_value(model.cdf(binned.positions()[i]));
    terms.push_back({side == TailSide::Right ? f : 1.0 - f, binned.counts()[i]});
  }
  return accumulate(std::move(terms), binned.total(), a, side, options);
}

}  // namespace tailtest
