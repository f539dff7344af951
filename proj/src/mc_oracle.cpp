#include "tailtest/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "tailtest/errors.hpp"
#include "tailtest/rng.hpp"
#include "tailtest/statistic.hpp"

namespace tailtest {

void McSettings::validate() const {
  if (replicates < 100) throw InputError("Monte Carlo needs at least 100 replicates");
  if (chunk_size < 1) throw InputError("Monte Carlo chunk size must be positive");
}

unsigned resolve_threads(unsigned requested) {
  unsigned cap = 0;
  if (const char* env = std::getenv("TAILTEST_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) cap = static_cast<unsigned>(std::min<long>(v, 1024));
  }
  unsigned n = requested;
  if (n == 0) n = cap != 0 ? cap : std::max(1u, std::thread::hardware_concurrency());
  if (cap != 0) n = std::min(n, cap);
  return std::max(1u, n);
}

std::vector<double> sample_null(const NullSpec& spec, const McSettings& settings) {
  settings.validate();
  const double a = spec.a();
  const auto n = static_cast<std::size_t>(spec.n());
  const double scale = a / static_cast<double>(n);
  const std::size_t chunks = (settings.replicates + settings.chunk_size - 1) / settings.chunk_size;
  std::vector<double> out(settings.replicates);

  auto fill_chunk = [&](std::size_t c) {
    RandomStream rng(settings.seed, c);
    const std::size_t begin = c * settings.chunk_size;
    const std::size_t end = std::min(begin + settings.chunk_size, settings.replicates);
    for (std::size_t r = begin; r < end; ++r) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) sum += tail_term(rng.uniform(), a);
      out[r] = scale * sum;
    }
  };

  const unsigned workers = std::min<std::size_t>(resolve_threads(settings.threads), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) fill_chunk(c);
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t c = w; c < chunks; c += workers) fill_chunk(c);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

PValueReport mc_p_value_sorted(double a_value, std::span<const double> sorted_null) {
  if (std::isnan(a_value) || a_value < 0.0) throw DomainError("mc_p_value requires A >= 0");
  const auto below = std::lower_bound(sorted_null.begin(), sorted_null.end(), a_value) - sorted_null.begin();
  const double r = static_cast<double>(sorted_null.size());
  const double exceed = r - static_cast<double>(below);
  PValueReport rep;
  rep.method = PValueMethod::MonteCarlo;
  rep.p = (1.0 + exceed) / (r + 1.0);
  rep.error_estimate = std::sqrt(rep.p * (1.0 - rep.p) / r);
  return rep;
}

PValueReport mc_p_value(double a_value, const NullSpec& spec, const McSettings& settings) {
  auto samples = sample_null(spec, settings);
  std::sort(samples.begin(), samples.end());
  return mc_p_value_sorted(a_value, samples);
}

}  // namespace tailtest
