#include "tailtest/null_dist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "tailtest/errors.hpp"
#include "tailtest/specfun.hpp"

namespace tailtest {

NullSpec::NullSpec(double a, std::int64_t n) : a_(a), n_(n) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InputError("null spec requires a > 0");
  if (n < 1) throw InputError("null spec requires n >= 1");
}

std::string_view to_string(PValueMethod method) noexcept {
  switch (method) {
    case PValueMethod::GammaClosedForm: return "gamma_closed_form";
    case PValueMethod::Inversion: return "inversion";
    case PValueMethod::AsymptoticSeries: return "asymptotic_series";
    case PValueMethod::AsymptoticIntegral: return "asymptotic_integral";
    case PValueMethod::MonteCarlo: return "monte_carlo";
  }
  return "unknown";
}

namespace {

double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

// sum_{l>=1} (l^-k - (l+b)^-k)
double shifted_zeta_difference(int k, double b) {
  if (b < 0.25) {
    // Expand (l+b)^-k in b: sum_j (-1)^(j+1) C(k+j-1, j) b^j zeta(k+j).
    double sum = 0.0;
    double coeff = 1.0;  // C(k+j-1, j) b^j, built incrementally
    for (int j = 1; j < 600; ++j) {
      coeff *= b * (k + j - 1.0) / j;
      const double term = (j % 2 == 1 ? 1.0 : -1.0) * coeff * specfun::zeta_int(k + j);
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  if (k == 1) return specfun::digamma(Complex(1.0 + b, 0.0)).real() + specfun::euler_gamma;
  return specfun::zeta_int(k) - specfun::hurwitz_zeta(k, 1.0 + b);
}

}  // namespace

Complex char_fn(double t, const NullSpec& spec) {
  return std::exp(null_characteristic_function(spec).log_phi(t));
}

double cumulant(int k, const NullSpec& spec) {
  if (k < 1) throw DomainError("cumulant order must be >= 1");
  const double b = 1.0 / spec.a();
  const double log_prefactor = std::log(spec.a()) + log_factorial(k - 1) + (k - 1) * std::log(spec.alpha());
  return std::exp(log_prefactor) * shifted_zeta_difference(k, b);
}

double gamma_closed_form_pdf(double s, std::int64_t n) {
  if (n < 1) throw InputError("gamma closed form requires n >= 1");
  if (s < 0.0 || std::isinf(s)) return 0.0;
  const double nd = static_cast<double>(n);
  if (s == 0.0) return n == 1 ? 1.0 : 0.0;
  return nd * boost::math::gamma_p_derivative(nd, nd * s);
}

double gamma_closed_form_cdf(double sigma, std::int64_t n) {
  if (n < 1) throw InputError("gamma closed form requires n >= 1");
  if (sigma <= 0.0) return 0.0;
  if (std::isinf(sigma)) return 1.0;
  const double nd = static_cast<double>(n);
  return boost::math::gamma_p(nd, nd * sigma);
}

CharacteristicFunction null_characteristic_function(const NullSpec& spec) {
  const double a = spec.a();
  const double nd = static_cast<double>(spec.n());
  const double alpha = spec.alpha();
  const double b = 1.0 / a;
  // Same routine as the t-dependent part so that phi(0) = 1 exactly.
  const double log_gamma_head = (specfun::ln_gamma(Complex(1.0 + b, 0.0)) - specfun::ln_gamma(Complex(1.0, 0.0))).real();

  CharacteristicFunction cf;
  cf.log_phi = [=](double t) {
    const Complex z(1.0, -t * alpha);
    return nd * (log_gamma_head + specfun::ln_gamma(z) - specfun::ln_gamma(z + b));
  };

  // Gamma(z)/Gamma(z+b) = w^-b exp(b(b^2-1)/(24 w^2) + O(w^-4)), w = z + (b-1)/2,
  // so phi ~ M w^-p (1 + p(b^2-1)/(24 w^2)) with p = n/a.
  const double c0 = 0.5 * (1.0 + b);
  const double p = nd * b;
  const double second = p * (b * b - 1.0) / 24.0;
  cf.kernel.scale = alpha / c0;
  cf.kernel.terms[0] = {std::exp(nd * log_gamma_head - p * std::log(c0)), p};
  cf.kernel.terms[1] = {second * std::exp(nd * log_gamma_head - (p + 2.0) * std::log(c0)), p + 2.0};

  cf.mean = cumulant(1, spec);
  cf.variance = cumulant(2, spec);
  return cf;
}

InversionResult null_pdf_detailed(double s, const NullSpec& spec, const InversionSettings& settings) {
  return invert_pdf(null_characteristic_function(spec), s, settings);
}

InversionResult null_cdf_detailed(double sigma, const NullSpec& spec, const InversionSettings& settings) {
  if (std::isnan(sigma)) throw InputError("null_cdf: sigma is NaN");
  return invert_cdf(null_characteristic_function(spec), sigma, settings);
}

double null_pdf(double s, const NullSpec& spec, const InversionSettings& settings) {
  return null_pdf_detailed(s, spec, settings).value;
}

double null_cdf(double sigma, const NullSpec& spec, const InversionSettings& settings) {
  return null_cdf_detailed(sigma, spec, settings).value;
}

std::vector<double> null_cdf_grid(std::span<const double> sigmas, const NullSpec& spec,
                                  const InversionSettings& settings) {
  const auto cf = null_characteristic_function(spec);
  std::vector<std::size_t> order(sigmas.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return sigmas[l] < sigmas[r]; });
  std::vector<double> out(sigmas.size());
  double running = 0.0;
  for (std::size_t idx : order) {
    running = std::max(running, invert_cdf(cf, sigmas[idx], settings).value);
    out[idx] = running;
  }
  return out;
}

}  // namespace tailtest
