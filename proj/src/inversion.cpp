#include "tailtest/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "tailtest/errors.hpp"

namespace tailtest {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Safety factor on measured tail magnitudes.
constexpr double kTailSafety = 2.0;
constexpr int kMaxPanelDepth = 12;

// Regularized lower incomplete gamma, extended by P(shape, 0) = 0.
double gamma_cdf(double shape, double x) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(shape, x);
}

double gamma_pdf(double shape, double x) {
  if (x < 0.0) return 0.0;
  if (x == 0.0) {
    if (shape > 1.0) return 0.0;
    if (shape == 1.0) return 1.0;
    return std::numeric_limits<double>::infinity();
  }
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_p_derivative(shape, x);
}

enum class Target { Cdf, Pdf };

template <unsigned N, class F>
void adaptive_panel(F& f, double lo, double hi, double tol, int depth, double& sum, double& err,
                    std::size_t& evaluations) {
  double e = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, N>::integrate(f, lo, hi, 0, 0.0, &e);
  evaluations += N;
  if (e <= tol || depth == 0) {
    sum += v;
    err += e;
    return;
  }
  const double mid = 0.5 * (lo + hi);
  adaptive_panel<N>(f, lo, mid, 0.5 * tol, depth - 1, sum, err, evaluations);
  adaptive_panel<N>(f, mid, hi, 0.5 * tol, depth - 1, sum, err, evaluations);
}

struct Plan {
  bool subtract = false;
  double decay = 1.0;  // |X(t)| ~ t^-decay for the integrated transform X
  double unit = 1.0;   // natural magnitude of the result
  double first_truncation = 0.0;
};

// Predicted truncation point of the plain route, from the power-law
// envelope |phi(t)| <= mass (scale t)^-shape of the leading kernel term.
double plain_truncation(const GammaKernel& kernel, Target target, double eps) {
  const double mass = std::abs(kernel.leading().mass);
  const double p = kernel.leading().shape;
  const double theta = kernel.scale;
  if (target == Target::Cdf) {
    return std::pow(2.0 * kTailSafety * mass / (kPi * p * eps), 1.0 / p) / theta;
  }
  if (p <= 1.5) return std::numeric_limits<double>::infinity();
  return std::pow(kTailSafety * mass / (theta * kPi * (p - 1.0) * eps), 1.0 / (p - 1.0)) / theta;
}

Plan make_plan(const CharacteristicFunction& cf, Target target, const InversionSettings& settings) {
  Plan plan;
  const double sd = std::sqrt(cf.variance);
  const double theta = cf.kernel.scale;
  plan.unit = target == Target::Cdf ? 1.0 : 1.0 / sd;
  const double eps = 0.1 * settings.rel_tol * plan.unit;
  const double t_plain = plain_truncation(cf.kernel, target, eps);
  switch (settings.kernel) {
    case KernelPolicy::Never:
      plan.subtract = false;
      break;
    case KernelPolicy::Always:
      plan.subtract = true;
      break;
    case KernelPolicy::Auto:
      plan.subtract = !(t_plain * theta <= settings.plain_truncation_limit);
      break;
  }
  const double p = cf.kernel.leading().shape;
  plan.decay = plan.subtract ? p + 4.0 : p;
  const double start = 4.0 * std::min(1.0 / sd, 1.0 / theta);
  plan.first_truncation = plan.subtract ? start : std::max(start, std::min(t_plain, 1e3 * start));
  return plan;
}

template <unsigned N>
InversionResult run(const CharacteristicFunction& cf, double x, Target target,
                    const InversionSettings& settings) {
  const Plan plan = make_plan(cf, target, settings);
  const GammaKernel& kernel = cf.kernel;
  const double theta = kernel.scale;
  const double sd = std::sqrt(cf.variance);
  const double eps_tail = 0.1 * settings.rel_tol * plan.unit;
  const double eps_quad = 0.1 * settings.rel_tol * plan.unit;

  InversionResult result;
  result.kernel_subtracted = plan.subtract;

  auto transform = [&](double t) -> Complex {
    Complex v = std::exp(cf.log_phi(t));
    if (plan.subtract) v -= kernel.char_fn(t);
    return v;
  };
  // Integrands on t >= 0; the negative half-line is folded in by conjugate
  // symmetry, hence the real parts.
  auto integrand = [&](double t) -> double {
    const Complex v = transform(t);
    if (target == Target::Pdf) return std::real(std::polar(1.0, -x * t) * v) / kPi;
    // (1 - e^{-ixt}) / (it) = x e^{-ixt/2} sinc(xt/2), finite at t = 0
    const double half = 0.5 * x * t;
    const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
    return std::real(x * sinc * std::polar(1.0, -half) * v) / kPi;
  };

  auto tail_bound = [&](double t) {
    double mag = std::max(std::abs(transform(t)), std::abs(transform(0.75 * t)) * std::pow(0.75, plan.decay));
    if (!plan.subtract) mag = std::max(mag, std::abs(kernel.char_fn(t)));
    result.evaluations += 2;
    if (target == Target::Cdf) return kTailSafety * 2.0 * mag / (kPi * plan.decay);
    return kTailSafety * mag * t / (kPi * (plan.decay - 1.0));
  };

  const double oscillation = std::abs(x) + std::abs(cf.mean);
  const double base_width = 0.5 * std::min(1.0 / sd, 1.0 / theta);
  const double t_cap = settings.max_truncation / theta;

  double sum = 0.0;
  double quad_err = 0.0;
  double lo = 0.0;
  double truncation = std::min(plan.first_truncation, t_cap);
  for (;;) {
    while (lo < truncation) {
      double width = std::max(base_width, 0.25 * lo);
      if (oscillation > 0.0) width = std::min(width, kPi / oscillation);
      const double hi = std::min(truncation, lo + width);
      const double tol = eps_quad * std::max((hi - lo) / truncation, 1e-4);
      adaptive_panel<N>(integrand, lo, hi, tol, kMaxPanelDepth, sum, quad_err, result.evaluations);
      lo = hi;
    }
    const double bound = tail_bound(truncation);
    result.tail_bound = bound;
    if (bound <= eps_tail) break;
    if (truncation >= t_cap) {
      throw ConvergenceError("characteristic function inversion did not converge: tail bound " +
                                 std::to_string(bound) + " at t = " + std::to_string(truncation),
                             bound + quad_err);
    }
    truncation = std::min(2.0 * truncation, t_cap);
  }

  double value = sum;
  if (plan.subtract) value += target == Target::Cdf ? kernel.cdf(x) : kernel.pdf(x);
  result.truncation = truncation;
  result.error_estimate = quad_err + result.tail_bound;

  if (target == Target::Cdf) {
    const double clamped = std::clamp(value, 0.0, 1.0);
    result.clipped = std::abs(clamped - value);
    value = clamped;
  } else if (value < 0.0) {
    result.clipped = -value;
    value = 0.0;
  }
  result.value = value;
  return result;
}

InversionResult dispatch(const CharacteristicFunction& cf, double x, Target target,
                         const InversionSettings& settings) {
  settings.validate();
  switch (settings.quadrature_order) {
    case 15: return run<15>(cf, x, target, settings);
    case 21: return run<21>(cf, x, target, settings);
    case 31: return run<31>(cf, x, target, settings);
    case 41: return run<41>(cf, x, target, settings);
    case 51: return run<51>(cf, x, target, settings);
    default: return run<61>(cf, x, target, settings);
  }
}

}  // namespace

Complex GammaKernel::char_fn(double t) const {
  const Complex log_base = std::log(Complex(1.0, -t * scale));
  Complex v = 0.0;
  for (const auto& term : terms) {
    if (term.mass != 0.0) v += term.mass * std::exp(-term.shape * log_base);
  }
  return v;
}

double GammaKernel::cdf(double x) const {
  double v = 0.0;
  for (const auto& term : terms) {
    if (term.mass != 0.0) v += term.mass * gamma_cdf(term.shape, x / scale);
  }
  return v;
}

double GammaKernel::pdf(double x) const {
  double v = 0.0;
  for (const auto& term : terms) {
    if (term.mass != 0.0) v += term.mass * gamma_pdf(term.shape, x / scale) / scale;
  }
  return v;
}

void InversionSettings::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) throw InputError("inversion rel_tol must lie in (0, 1e-3]");
  if (!(max_truncation > 0.0)) throw InputError("inversion max_truncation must be positive");
  if (!(plain_truncation_limit >= 0.0)) throw InputError("plain_truncation_limit must be nonnegative");
  switch (quadrature_order) {
    case 15: case 21: case 31: case 41: case 51: case 61: break;
    default: throw InputError("quadrature order must be one of 15, 21, 31, 41, 51, 61");
  }
}

InversionResult invert_cdf(const CharacteristicFunction& cf, double x, const InversionSettings& settings) {
  if (!std::isfinite(x)) {
    settings.validate();
    InversionResult r;
    r.value = x > 0.0 ? 1.0 : 0.0;
    return r;
  }
  if (x <= 0.0) {
    settings.validate();
    return InversionResult{};
  }
  return dispatch(cf, x, Target::Cdf, settings);
}

InversionResult invert_pdf(const CharacteristicFunction& cf, double s, const InversionSettings& settings) {
  if (s < 0.0 || std::isinf(s)) {
    settings.validate();
    return InversionResult{};
  }
  // Near the origin the density behaves like s^(shape - 1).
  if (s == 0.0 && cf.kernel.leading().shape != 1.0) {
    settings.validate();
    InversionResult r;
    r.value = cf.kernel.leading().shape > 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return r;
  }
  return dispatch(cf, s, Target::Pdf, settings);
}

}  // namespace tailtest
