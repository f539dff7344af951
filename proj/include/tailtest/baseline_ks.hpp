#pragma once

#include <cstddef>

#include "tailtest/cdf_model.hpp"
#include "tailtest/statistic.hpp"

namespace tailtest {

struct KsResult {
  double distance = 0.0;  // sup |F_A - F_B| (or sup |F_n - F|)
  double lambda = 0.0;    // distance / sqrt(1/N_A + 1/N_B)
  double p = -1.0;        // negative until a p-value is attached
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  bool n_b_infinite = false;  // one-sample test against a model
  // Effective sample size below 20: the asymptotic law may be inaccurate.
  bool small_sample = false;
};

KsResult smirnov_statistic(const Sample& a, const Sample& b);
KsResult kolmogorov_statistic(const Sample& sample, const CdfModel& model);

// P(D > lambda) = 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2).
double ks_p_alternating(double lambda);
// 1 - sqrt(2 pi)/lambda sum exp(-(2k-1)^2 pi^2 / (8 lambda^2)).
double ks_p_theta(double lambda);
// Picks whichever series converges fastest (theta form below lambda = 1).
double ks_p(double lambda);

inline KsResult with_p_value(KsResult r) {
  r.p = ks_p(r.lambda);
  return r;
}

}  // namespace tailtest
