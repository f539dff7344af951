#pragma once

#include <complex>

namespace tailtest::specfun {

using Complex = std::complex<double>;

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr double pi = 3.14159265358979323846264338327950288;

/// Log-gamma on the open right half-plane. Returns the analytic
/// continuation of ln Gamma from the positive real axis, so the imaginary
/// part is not reduced to (-pi, pi]. Throws DomainError if re(z) <= 0.
Complex ln_gamma(Complex z);

/// Digamma psi(z) = d/dz ln Gamma(z) for re(z) > 0.
Complex digamma(Complex z);

/// Riemann zeta at integer k >= 2.
double zeta_int(int k);

/// Hurwitz zeta sum_{l>=0} (l + q)^-s for s > 1, q > 0.
double hurwitz_zeta(double s, double q);

/// sum_{l>=1} exp(-l y) / l^2, i.e. Li2(e^-y), for y >= 0.
double dilog_exp(double y);

/// ln(1 - e^u) for u <= 0 without cancellation near either end.
double log1mexp(double u);

}  // namespace tailtest::specfun
