#include "tailtest/pvalue.hpp"

#include <algorithm>
#include <cmath>

#include "tailtest/asymptotic.hpp"
#include "tailtest/errors.hpp"

namespace tailtest {

std::string_view to_string(MethodPolicy policy) noexcept {
  switch (policy) {
    case MethodPolicy::Auto: return "auto";
    case MethodPolicy::Exact: return "exact";
    case MethodPolicy::Asymptotic: return "asymptotic";
    case MethodPolicy::MonteCarlo: return "mc";
  }
  return "unknown";
}

namespace {

PValueReport from_cdf(double cdf, PValueMethod method, double error) {
  PValueReport rep;
  rep.p = std::clamp(1.0 - cdf, 0.0, 1.0);
  rep.method = method;
  rep.error_estimate = std::max(0.0, error);
  return rep;
}

PValueReport exact(double a_value, const NullSpec& spec, const PValuePolicy& policy) {
  if (spec.a() == 1.0) {
    return from_cdf(gamma_closed_form_cdf(a_value, spec.n()), PValueMethod::GammaClosedForm, 0.0);
  }
  const auto r = null_cdf_detailed(a_value, spec, policy.inversion);
  return from_cdf(r.value, PValueMethod::Inversion, r.error_estimate);
}

PValueReport asymptotic(double a_value, const NullSpec& spec, const PValuePolicy& policy) {
  const LimitSpec limit(spec.alpha());
  if (spec.alpha() >= policy.series_min_alpha) {
    if (!(a_value > 0.0)) return from_cdf(0.0, PValueMethod::AsymptoticSeries, 0.0);
    const auto s = limit_cdf_series(a_value, limit, policy.series_min_alpha);
    return from_cdf(s.value, PValueMethod::AsymptoticSeries, s.error_indicator);
  }
  const auto r = limit_cdf_detailed(a_value, limit, policy.inversion);
  return from_cdf(r.value, PValueMethod::AsymptoticIntegral, r.error_estimate);
}

}  // namespace

PValueReport p_value(double a_value, bool infinite, const NullSpec& spec, const PValuePolicy& policy) {
  if (infinite || std::isinf(a_value)) {
    PValueReport rep;
    rep.p = 0.0;
    rep.infinite_statistic = true;
    rep.method = policy.method == MethodPolicy::MonteCarlo ? PValueMethod::MonteCarlo
                 : spec.a() == 1.0                         ? PValueMethod::GammaClosedForm
                                                           : PValueMethod::Inversion;
    return rep;
  }
  if (std::isnan(a_value) || a_value < 0.0) throw DomainError("p_value requires A >= 0");

  switch (policy.method) {
    case MethodPolicy::Exact: return exact(a_value, spec, policy);
    case MethodPolicy::Asymptotic: return asymptotic(a_value, spec, policy);
    case MethodPolicy::MonteCarlo: return mc_p_value(a_value, spec, policy.monte_carlo);
    case MethodPolicy::Auto: break;
  }
  if (spec.a() == 1.0) return exact(a_value, spec, policy);
  try {
    if (spec.n() >= policy.asymptotic_min_n && spec.a() >= policy.asymptotic_min_a) {
      return asymptotic(a_value, spec, policy);
    }
    return exact(a_value, spec, policy);
  } catch (const ConvergenceError&) {
    if (!policy.monte_carlo_fallback) throw;
    auto rep = mc_p_value(a_value, spec, policy.monte_carlo);
    rep.fallback = true;
    return rep;
  }
}

}  // namespace tailtest
