#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>

namespace tailtest {

using Complex = std::complex<double>;

// Closed-form part subtracted from a characteristic function before
// numerical inversion: sum_j mass_j (1 - i t scale)^(-shape_j). Every term is
// a (signed) gamma law, so its density and CDF are known exactly. The terms
// share the power-law tail of the characteristic function being inverted,
// which leaves a remainder decaying several powers of t faster.
struct GammaKernel {
  struct Term {
    double mass = 0.0;
    double shape = 1.0;
  };
  double scale = 1.0;
  std::array<Term, 2> terms{};

  Complex char_fn(double t) const;
  double cdf(double x) const;
  double pdf(double x) const;
  // Leading (slowest) term; fixes the decay rate t^-shape of |phi|.
  const Term& leading() const noexcept { return terms[0]; }
};

enum class KernelPolicy {
  Auto,    // plain inversion when its truncation point is cheap, else subtract
  Never,
  Always,
};

struct InversionSettings {
  double rel_tol = 1e-8;
  // Hard cap on the truncation point, in units of 1 / kernel.scale.
  double max_truncation = 1e6;
  // Auto policy: plain inversion is used only if its predicted truncation
  // point (units of 1 / kernel.scale) is below this.
  double plain_truncation_limit = 64.0;
  int quadrature_order = 21;
  KernelPolicy kernel = KernelPolicy::Auto;

  // Throws InputError unless rel_tol in (0, 1e-3], positive limits, and a
  // supported Gauss-Kronrod order (15, 21, 31, 41, 51, 61).
  void validate() const;
};

// A characteristic function together with what the inverter needs to know
// about it: its log, a kernel with matching large-t behavior, and the first
// two cumulants (which set the natural scales of the integrand).
struct CharacteristicFunction {
  std::function<Complex(double)> log_phi;
  GammaKernel kernel;
  double mean = 0.0;
  double variance = 1.0;
};

struct InversionResult {
  double value = 0.0;
  double error_estimate = 0.0;  // quadrature estimate + tail bound
  double truncation = 0.0;      // integration stopped at this t
  double tail_bound = 0.0;
  bool kernel_subtracted = false;
  double clipped = 0.0;  // magnitude removed by clipping to the valid range
  std::size_t evaluations = 0;
};

// P(X <= x) = (1/pi) int_0^inf Re[(1 - e^{-ixt}) / (it) phi(t)] dt.
// Throws ConvergenceError when the truncation bound cannot reach tolerance.
InversionResult invert_cdf(const CharacteristicFunction& cf, double x,
                           const InversionSettings& settings);

// Density (1/pi) int_0^inf Re[e^{-ist} phi(t)] dt.
InversionResult invert_pdf(const CharacteristicFunction& cf, double s,
                           const InversionSettings& settings);

}  // namespace tailtest
