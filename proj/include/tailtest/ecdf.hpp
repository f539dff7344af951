#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tailtest/cdf_model.hpp"
#include "tailtest/statistic.hpp"

namespace tailtest {

// Average of k experimental CDFs with n entries each. The result is a
// right-continuous step function taking values j / (kn), usable as the
// theoretical CDF of the tail test.
class AveragedEcdf final : public CdfModel {
 public:
  // Throws InputError when samples is empty or sizes differ.
  explicit AveragedEcdf(std::span<const Sample> samples);

  std::size_t k() const noexcept { return k_; }
  std::size_t n() const noexcept { return n_; }
  // Distinct sorted jump locations and the value of mu at (and right of) each.
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<double>& mu_values() const noexcept { return mu_values_; }

  double cdf(double x) const override;
  double quantile(double u) const override;
  std::string describe() const override;

 private:
  std::size_t k_ = 0;
  std::size_t n_ = 0;
  std::vector<double> pooled_;  // all kn entries, sorted
  std::vector<double> breakpoints_;
  std::vector<double> mu_values_;
};

// Probability that the averaged ECDF equals mu at a point where the true CDF
// is F: binomial(kn, F) evaluated at kn * mu successes.
double point_probability(double mu, double F, std::int64_t k, std::int64_t n);

// Gaussian approximation of point_probability for large kn (probability of
// the single lattice value mu).
double gaussian_point_probability(double mu, double F, std::int64_t k, std::int64_t n);

// The same approximation expressed as a density in mu (lattice spacing
// 1/(kn) divided out).
double gaussian_density(double mu, double F, std::int64_t k, std::int64_t n);

// Standard deviation sqrt(F(1-F)/(kn)) of mu around F.
double dispersion(double F, std::int64_t k, std::int64_t n);

}  // namespace tailtest
