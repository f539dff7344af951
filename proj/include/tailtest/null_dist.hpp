#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tailtest/inversion.hpp"

namespace tailtest {

// Identifies the null law of A for exponent a and sample size n.
class NullSpec {
 public:
  NullSpec(double a, std::int64_t n);

  double a() const noexcept { return a_; }
  std::int64_t n() const noexcept { return n_; }
  double alpha() const noexcept { return a_ / static_cast<double>(n_); }

 private:
  double a_;
  std::int64_t n_;
};

enum class PValueMethod { GammaClosedForm, Inversion, AsymptoticSeries, AsymptoticIntegral, MonteCarlo };

std::string_view to_string(PValueMethod method) noexcept;

struct PValueReport {
  double p = 1.0;
  PValueMethod method = PValueMethod::Inversion;
  double error_estimate = 0.0;
  bool infinite_statistic = false;
  // Set when the requested method failed and Monte Carlo was used instead.
  bool fallback = false;
};

// E[exp(itA)] = [Gamma(1+1/a) Gamma(1-it a/n) / Gamma(1-it a/n+1/a)]^n,
// computed in log space.
Complex char_fn(double t, const NullSpec& spec);

// k-th cumulant a (k-1)! (a/n)^(k-1) sum_l (l^-k - (l+1/a)^-k).
double cumulant(int k, const NullSpec& spec);

// The a = 1 law: gamma with mean 1 and variance 1/n.
double gamma_closed_form_pdf(double s, std::int64_t n);
double gamma_closed_form_cdf(double sigma, std::int64_t n);

// Everything the inverter needs for this null law.
CharacteristicFunction null_characteristic_function(const NullSpec& spec);

InversionResult null_pdf_detailed(double s, const NullSpec& spec, const InversionSettings& settings = {});
InversionResult null_cdf_detailed(double sigma, const NullSpec& spec,
                                  const InversionSettings& settings = {});

double null_pdf(double s, const NullSpec& spec, const InversionSettings& settings = {});
double null_cdf(double sigma, const NullSpec& spec, const InversionSettings& settings = {});

// CDF on a grid; the output is nondecreasing in sigma (quadrature noise in
// flat regions is removed by a running maximum over the sorted grid).
std::vector<double> null_cdf_grid(std::span<const double> sigmas, const NullSpec& spec,
                                  const InversionSettings& settings = {});

}  // namespace tailtest
