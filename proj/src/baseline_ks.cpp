#include "tailtest/baseline_ks.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tailtest/errors.hpp"

namespace tailtest {

namespace {
constexpr double kSmallSample = 20.0;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

KsResult smirnov_statistic(const Sample& a, const Sample& b) {
  std::vector<double> xa(a.values().begin(), a.values().end());
  std::vector<double> xb(b.values().begin(), b.values().end());
  std::sort(xa.begin(), xa.end());
  std::sort(xb.begin(), xb.end());
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());

  std::size_t i = 0, j = 0;
  double sup = 0.0;
  while (i < xa.size() || j < xb.size()) {
    // Advance past every copy of the next breakpoint in either sample.
    double x;
    if (j >= xb.size() || (i < xa.size() && xa[i] <= xb[j])) x = xa[i]; else x = xb[j];
    while (i < xa.size() && xa[i] == x) ++i;
    while (j < xb.size() && xb[j] == x) ++j;
    sup = std::max(sup, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }

  KsResult r;
  r.distance = sup;
  r.lambda = sup / std::sqrt(1.0 / na + 1.0 / nb);
  r.n_a = xa.size();
  r.n_b = xb.size();
  r.small_sample = na * nb / (na + nb) < kSmallSample;
  return r;
}

KsResult kolmogorov_statistic(const Sample& sample, const CdfModel& model) {
  auto f = probability_transform(sample, model);
  std::vector<std::size_t> order(f.size());
  std::vector<double> xs(sample.values().begin(), sample.values().end());
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double fi = std::clamp(model.cdf(xs[i]), 0.0, 1.0);
    // F_n jumps from i/n to (i+1)/n at x_(i).
    sup = std::max({sup, static_cast<double>(i + 1) / n - fi, fi - static_cast<double>(i) / n});
  }
  KsResult r;
  r.distance = sup;
  r.lambda = std::sqrt(n) * sup;
  r.n_a = xs.size();
  r.n_b_infinite = true;
  r.small_sample = n < kSmallSample;
  return r;
}

double ks_p_alternating(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k < 1000; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_p_theta(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k < 1000; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double term = std::exp(-odd * odd * kPi * kPi / (8.0 * lambda * lambda));
    sum += term;
    if (term < 1e-18 * sum || term == 0.0) break;
  }
  return std::clamp(1.0 - std::sqrt(2.0 * kPi) / lambda * sum, 0.0, 1.0);
}

double ks_p(double lambda) {
  if (std::isnan(lambda) || lambda < 0.0) throw DomainError("ks_p requires lambda >= 0");
  return lambda < 1.0 ? ks_p_theta(lambda) : ks_p_alternating(lambda);
}

}  // namespace tailtest
