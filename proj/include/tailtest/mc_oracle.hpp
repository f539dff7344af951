#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tailtest/null_dist.hpp"

namespace tailtest {

struct McSettings {
  std::size_t replicates = 100000;
  std::uint64_t seed = 20240607;
  // Replicates per random stream; stream index = chunk index.
  std::size_t chunk_size = 4096;
  unsigned threads = 1;

  // Throws InputError unless replicates >= 100 and chunk_size >= 1.
  void validate() const;
};

// Null draws of A from iid uniforms, in replicate order. The output depends
// only on (seed, chunk_size, replicates), not on the thread count.
std::vector<double> sample_null(const NullSpec& spec, const McSettings& settings);

// Add-one estimate (1 + #{A_i >= a_value}) / (R + 1) against a sorted sample.
PValueReport mc_p_value_sorted(double a_value, std::span<const double> sorted_null);

PValueReport mc_p_value(double a_value, const NullSpec& spec, const McSettings& settings);

// Number of workers: `requested` if nonzero, else TAILTEST_THREADS, else the
// hardware concurrency; always capped by TAILTEST_THREADS when that is set.
unsigned resolve_threads(unsigned requested);

}  // namespace tailtest
