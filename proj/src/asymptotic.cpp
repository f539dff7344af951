#include "tailtest/asymptotic.hpp"

#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tailtest/errors.hpp"
#include "tailtest/specfun.hpp"

namespace tailtest {

namespace {
constexpr double kPi = specfun::pi;
}

LimitSpec::LimitSpec(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InputError("limit spec requires alpha > 0");
}

CharacteristicFunction limit_characteristic_function(const LimitSpec& spec) {
  const double alpha = spec.alpha();
  CharacteristicFunction cf;
  cf.log_phi = [alpha](double t) {
    return -(specfun::euler_gamma + specfun::digamma(Complex(1.0, -t * alpha))) / alpha;
  };
  // psi(w + 1/2) = ln w + 1/(24 w^2) + O(w^-4) with w = 1/2 - i t alpha.
  const double p = 1.0 / alpha;
  const double log_mass = -specfun::euler_gamma / alpha + p * std::log(2.0);
  cf.kernel.scale = 2.0 * alpha;
  cf.kernel.terms[0] = {std::exp(log_mass), p};
  cf.kernel.terms[1] = {-1.0 / (24.0 * alpha) * std::exp(log_mass + 2.0 * std::log(2.0)), p + 2.0};
  cf.mean = specfun::zeta_int(2);
  cf.variance = 2.0 * specfun::zeta_int(3) * alpha;
  return cf;
}

InversionResult limit_pdf_detailed(double s, const LimitSpec& spec, const InversionSettings& settings) {
  return invert_pdf(limit_characteristic_function(spec), s, settings);
}

InversionResult limit_cdf_detailed(double sigma, const LimitSpec& spec, const InversionSettings& settings) {
  if (std::isnan(sigma)) throw InputError("limit_cdf: sigma is NaN");
  return invert_cdf(limit_characteristic_function(spec), sigma, settings);
}

double limit_pdf(double s, const LimitSpec& spec, const InversionSettings& settings) {
  return limit_pdf_detailed(s, spec, settings).value;
}

double limit_cdf(double sigma, const LimitSpec& spec, const InversionSettings& settings) {
  return limit_cdf_detailed(sigma, spec, settings).value;
}

double limit_cdf_power_split(double sigma, const LimitSpec& spec, double tolerance) {
  const double alpha = spec.alpha();
  if (!(alpha > 2.0)) throw DomainError("power-law split requires alpha > 2");
  if (!(sigma > 0.0)) return 0.0;
  const double y = sigma / alpha;
  const double g = specfun::euler_gamma;

  // Closed-form integral of the subtracted power-law part.
  const double head = std::exp((std::log(y) - g) / alpha - std::lgamma(1.0 + 1.0 / alpha));

  // Remainder in the dimensionless variable u = sigma t.
  auto remainder = [&](double u) -> Complex {
    const Complex full = std::exp(-(g + specfun::digamma(Complex(1.0, -u / y))) / alpha);
    const Complex power = std::exp(Complex(-g / alpha - std::log(u / y) / alpha, kPi / (2.0 * alpha)));
    return full - power;
  };
  auto integrand = [&](double u) {
    return std::real((1.0 - std::polar(1.0, -u)) / Complex(0.0, kPi * u) * remainder(u));
  };

  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double total = 0.0;
  // u^(-1/alpha) endpoint singularity: integrate [0, 1] in v with u = v^2.
  total += GK::integrate([&](double v) { return v == 0.0 ? 0.0 : 2.0 * v * integrand(v * v); }, 0.0, 1.0,
                         20, 1e-12);
  // Oscillation period 2 pi; the integrand decays like u^(-2-1/alpha). Stop
  // once the oscillating tail, bounded by |R(u)| / (pi u), is below tolerance.
  double lo = 1.0;
  const double panel = 4.0 * kPi;
  while (lo < 1e7 && std::abs(remainder(lo)) / (kPi * lo) > 0.01 * tolerance) {
    const double hi = lo + panel;
    total += GK::integrate(integrand, lo, hi, 10, 1e-13);
    lo = hi;
  }
  // Non-oscillating part of the tail, Im R(u) / (pi u), integrated to
  // infinity; the oscillating part beyond `upper` is below tolerance.
  boost::math::quadrature::exp_sinh<double> tail;
  total += tail.integrate([&](double u) { return std::imag(remainder(u)) / (kPi * u); }, lo,
                          std::numeric_limits<double>::infinity());
  return head + total;
}

double second_order_term(double y) {
  if (std::isnan(y) || y < 0.0) throw DomainError("second_order_term requires y >= 0");
  if (y == 0.0) return -kPi * kPi / 12.0;
  if (std::isinf(y)) return 0.0;
  return 0.5 * y * std::log(-std::expm1(-y)) - 0.5 * specfun::dilog_exp(y);
}

SeriesTerms limit_cdf_series(double sigma, const LimitSpec& spec, double series_threshold) {
  if (!(sigma > 0.0)) throw DomainError("limit_cdf_series requires sigma > 0");
  const double alpha = spec.alpha();
  SeriesTerms out;
  out.y = sigma / alpha;
  out.leading = std::exp(std::log(-std::expm1(-out.y)) / alpha);
  out.second_order = second_order_term(out.y);
  out.value = out.leading * (1.0 + out.second_order / (alpha * alpha));
  out.error_indicator = std::abs(out.second_order) / (alpha * alpha * alpha);
  out.below_threshold = alpha < series_threshold;
  return out;
}

}  // namespace tailtest
