#include "tailtest/power_study.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "tailtest/baseline_ks.hpp"
#include "tailtest/errors.hpp"
#include "tailtest/rng.hpp"

namespace tailtest {

namespace {

struct Cell {
  double a;
  TailSide side;
};

}  // namespace

std::vector<PowerRow> power_study(const PowerStudyConfig& config) {
  if (!config.null_model || !config.alternative) throw InputError("power study needs null and alternative models");
  if (config.replicates == 0) throw InputError("power study needs at least one replicate");
  if (config.n == 0) throw InputError("power study needs n >= 1");
  if (config.exponents.empty() && !config.include_ks) throw InputError("power study has nothing to evaluate");
  if (!(config.level > 0.0 && config.level < 1.0)) throw InputError("significance level must lie in (0,1)");
  for (double a : config.exponents) {
    if (!(a > 0.0) || !std::isfinite(a)) throw InputError("exponents must be positive");
  }
  if (config.sides.empty()) throw InputError("power study needs at least one side");

  std::vector<Cell> cells;
  for (double a : config.exponents) {
    for (TailSide s : config.sides) cells.push_back({a, s});
  }
  const std::size_t columns = cells.size() + (config.include_ks ? 1 : 0);
  const auto n = static_cast<std::int64_t>(config.n);

  // Monte Carlo p-values reuse one sorted null sample per exponent.
  std::vector<std::vector<double>> null_samples(config.exponents.size());
  if (config.policy.method == MethodPolicy::MonteCarlo) {
    for (std::size_t i = 0; i < config.exponents.size(); ++i) {
      null_samples[i] = sample_null(NullSpec(config.exponents[i], n), config.policy.monte_carlo);
      std::sort(null_samples[i].begin(), null_samples[i].end());
    }
  }
  auto exponent_index = [&](std::size_t cell) { return cell / config.sides.size(); };

  std::vector<unsigned char> rejected(config.replicates * columns, 0);
  auto run_replicate = [&](std::size_t r) {
    RandomStream rng(config.seed, r);
    std::vector<double> values(config.n);
    for (auto& v : values) v = config.alternative->draw(rng);
    const Sample sample(std::move(values));
    const auto f = probability_transform(sample, *config.null_model);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto stat = a_statistic_from_cdf_values(f, cells[c].a, cells[c].side);
      double p;
      if (config.policy.method == MethodPolicy::MonteCarlo) {
        p = stat.infinite ? 0.0 : mc_p_value_sorted(stat.value, null_samples[exponent_index(c)]).p;
      } else {
        p = p_value(stat, config.policy).p;
      }
      rejected[r * columns + c] = p < config.level;
    }
    if (config.include_ks) {
      const auto ks = kolmogorov_statistic(sample, *config.null_model);
      rejected[r * columns + cells.size()] = ks_p(ks.lambda) < config.level;
    }
  };

  const unsigned workers = std::min<std::size_t>(resolve_threads(config.threads), config.replicates);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&](unsigned w) {
    try {
      for (std::size_t r = w; r < config.replicates; r += workers) {
        {
          std::lock_guard lock(failure_mutex);
          if (failure) return;
        }
        run_replicate(r);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<PowerRow> rows;
  const double reps = static_cast<double>(config.replicates);
  for (std::size_t c = 0; c < columns; ++c) {
    PowerRow row;
    if (c < cells.size()) {
      row.test = "A";
      row.a = cells[c].a;
      row.side = cells[c].side;
    } else {
      row.test = "KS";
    }
    for (std::size_t r = 0; r < config.replicates; ++r) row.rejections += rejected[r * columns + c];
    row.replicates = config.replicates;
    row.power = static_cast<double>(row.rejections) / reps;
    row.std_error = std::sqrt(row.power * (1.0 - row.power) / reps);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tailtest
