#include "tailtest/ecdf.hpp"

#include <algorithm>
#include <cmath>

#include "tailtest/errors.hpp"

namespace tailtest {

AveragedEcdf::AveragedEcdf(std::span<const Sample> samples) {
  if (samples.empty()) throw InputError("averaged ECDF needs at least one sample");
  k_ = samples.size();
  n_ = samples.front().size();
  pooled_.reserve(k_ * n_);
  for (const auto& s : samples) {
    if (s.size() != n_) throw InputError("averaged ECDF: all samples must have the same number of entries");
    pooled_.insert(pooled_.end(), s.values().begin(), s.values().end());
  }
  std::sort(pooled_.begin(), pooled_.end());
  const double total = static_cast<double>(pooled_.size());
  for (std::size_t i = 0; i < pooled_.size(); ++i) {
    if (i + 1 < pooled_.size() && pooled_[i + 1] == pooled_[i]) continue;
    breakpoints_.push_back(pooled_[i]);
    mu_values_.push_back(static_cast<double>(i + 1) / total);
  }
}

double AveragedEcdf::cdf(double x) const {
  const auto count = std::upper_bound(pooled_.begin(), pooled_.end(), x) - pooled_.begin();
  return static_cast<double>(count) / static_cast<double>(pooled_.size());
}

double AveragedEcdf::quantile(double u) const {
  const double total = static_cast<double>(pooled_.size());
  auto idx = static_cast<std::size_t>(std::ceil(u * total));
  idx = std::clamp<std::size_t>(idx, 1, pooled_.size());
  return pooled_[idx - 1];
}

std::string AveragedEcdf::describe() const {
  return "ecdf(k=" + std::to_string(k_) + ",n=" + std::to_string(n_) + ")";
}

namespace {

void require_lattice_args(double F, std::int64_t k, std::int64_t n) {
  if (k < 1 || n < 1) throw DomainError("k and n must be positive");
  if (!(F >= 0.0 && F <= 1.0)) throw DomainError("F must lie in [0,1]");
}

}  // namespace

double point_probability(double mu, double F, std::int64_t k, std::int64_t n) {
  require_lattice_args(F, k, n);
  const double m = static_cast<double>(k) * static_cast<double>(n);
  const double raw = m * mu;
  const double j = std::round(raw);
  if (!(mu >= 0.0 && mu <= 1.0) || std::abs(raw - j) > 1e-9) {
    throw DomainError("kn * mu must be an integer in [0, kn]");
  }
  if (F == 0.0) return j == 0.0 ? 1.0 : 0.0;
  if (F == 1.0) return j == m ? 1.0 : 0.0;
  if (m <= 100.0) {
    double binom = 1.0;
    for (double i = 1.0; i <= j; i += 1.0) binom *= (m - j + i) / i;
    return binom * std::pow(F, j) * std::pow(1.0 - F, m - j);
  }
  const double log_binom = std::lgamma(m + 1.0) - std::lgamma(j + 1.0) - std::lgamma(m - j + 1.0);
  return std::exp(log_binom + j * std::log(F) + (m - j) * std::log1p(-F));
}

double gaussian_point_probability(double mu, double F, std::int64_t k, std::int64_t n) {
  require_lattice_args(F, k, n);
  if (F == 0.0 || F == 1.0) throw DomainError("Gaussian approximation needs 0 < F < 1");
  const double m = static_cast<double>(k) * static_cast<double>(n);
  const double var = F * (1.0 - F);
  return std::sqrt(1.0 / (2.0 * 3.14159265358979323846 * m * var)) *
         std::exp(-m * (mu - F) * (mu - F) / (2.0 * var));
}

double gaussian_density(double mu, double F, std::int64_t k, std::int64_t n) {
  return static_cast<double>(k) * static_cast<double>(n) * gaussian_point_probability(mu, F, k, n);
}

double dispersion(double F, std::int64_t k, std::int64_t n) {
  require_lattice_args(F, k, n);
  return std::sqrt(F * (1.0 - F) / (static_cast<double>(k) * static_cast<double>(n)));
}

}  // namespace tailtest
