#pragma once

#include "tailtest/inversion.hpp"

namespace tailtest {

// Joint limit a, n -> infinity with alpha = a/n fixed.
class LimitSpec {
 public:
  explicit LimitSpec(double alpha);
  double alpha() const noexcept { return alpha_; }

 private:
  double alpha_;
};

// Limit characteristic function exp(-(gamma + psi(1 - i t alpha)) / alpha)
// with its matching gamma kernel and cumulants zeta(2), 2 zeta(3) alpha.
CharacteristicFunction limit_characteristic_function(const LimitSpec& spec);

InversionResult limit_pdf_detailed(double s, const LimitSpec& spec, const InversionSettings& settings = {});
InversionResult limit_cdf_detailed(double sigma, const LimitSpec& spec,
                                   const InversionSettings& settings = {});
double limit_pdf(double s, const LimitSpec& spec, const InversionSettings& settings = {});
double limit_cdf(double sigma, const LimitSpec& spec, const InversionSettings& settings = {});

// Limit CDF by subtracting the power-law part exp(-gamma/alpha) (-i t alpha)^(-1/alpha)
// and integrating it in closed form. Independent of the kernel route above;
// needs alpha > 2 so that the subtracted singularity at t = 0 is mild.
double limit_cdf_power_split(double sigma, const LimitSpec& spec, double tolerance = 1e-7);

// Second-order coefficient of the large-alpha expansion:
// (y/2) ln(1 - e^-y) - (1/2) sum_l e^{-ly}/l^2; increases from -pi^2/12 to 0.
double second_order_term(double y);

struct SeriesTerms {
  double y = 0.0;        // sigma / alpha
  double leading = 0.0;  // (1 - e^-y)^(1/alpha)
  double second_order = 0.0;
  int k_max = 2;
  double value = 0.0;            // leading * (1 + second_order / alpha^2)
  double error_indicator = 0.0;  // |second_order| / alpha^3
  bool below_threshold = false;  // alpha below the configured series threshold
};

// Large-alpha expansion of the limit CDF truncated after the alpha^-2 term
// (the alpha^-1 term vanishes).
SeriesTerms limit_cdf_series(double sigma, const LimitSpec& spec, double series_threshold = 1.0);

}  // namespace tailtest
