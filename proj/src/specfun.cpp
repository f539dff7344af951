#include "tailtest/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "tailtest/errors.hpp"

namespace tailtest::specfun {

namespace {

// B_{2k} for k = 1..12
constexpr std::array<double, 12> kBernoulli = {
    1.0 / 6.0,          -1.0 / 30.0,          1.0 / 42.0,
    -1.0 / 30.0,        5.0 / 66.0,           -691.0 / 2730.0,
    7.0 / 6.0,          -3617.0 / 510.0,      43867.0 / 798.0,
    -174611.0 / 330.0,  854513.0 / 138.0,     -236364091.0 / 2730.0};

constexpr double kShiftRadius = 15.0;
constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

void require_right_half_plane(Complex z, const char* fn) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError(std::string(fn) + ": argument must be finite");
  }
  if (z.real() <= 0.0) {
    throw DomainError(std::string(fn) + ": requires re(z) > 0");
  }
}

// Number of unit shifts needed so that |z + N| >= kShiftRadius.
int shift_count(Complex z) {
  const double im = std::abs(z.imag());
  if (im >= kShiftRadius) return 0;
  const double target = std::sqrt(kShiftRadius * kShiftRadius - im * im);
  return z.real() >= target ? 0 : static_cast<int>(std::ceil(target - z.real()));
}

Complex stirling_ln_gamma(Complex z) {
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex power = inv;
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    series += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + series;
}

Complex asymptotic_digamma(Complex z) {
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex power = inv2;
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    series += kBernoulli[k - 1] / (2.0 * k) * power;
    power *= inv2;
  }
  return std::log(z) - 0.5 * inv - series;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Euler-Maclaurin evaluation of the Hurwitz zeta after shifting q past 10.
double euler_maclaurin_zeta(double s, double q) {
  double head = 0.0;
  const int shift = q >= 10.0 ? 0 : static_cast<int>(std::ceil(10.0 - q));
  for (int l = shift - 1; l >= 0; --l) head += std::pow(q + l, -s);
  const double x = q + shift;
  double tail = std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  double rising = s;  // s (s+1) ... (s + 2j - 2)
  double xpow = std::pow(x, -s - 1.0);
  for (std::size_t j = 1; j <= kBernoulli.size(); ++j) {
    const double term = kBernoulli[j - 1] / factorial(2 * static_cast<int>(j)) * rising * xpow;
    tail += term;
    if (std::abs(term) < 1e-18 * std::abs(head + tail)) break;
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    xpow /= x * x;
  }
  return head + tail;
}

constexpr int kZetaTableSize = 64;

const std::array<double, kZetaTableSize + 1>& zeta_table() {
  static const auto table = [] {
    std::array<double, kZetaTableSize + 1> t{};
    t[0] = -0.5;
    t[1] = std::numeric_limits<double>::infinity();
    for (int k = 2; k <= kZetaTableSize; ++k) t[k] = euler_maclaurin_zeta(k, 1.0);
    return t;
  }();
  return table;
}

// Li2(w) by its defining series; used only for 0 <= w <= 0.5.
double dilog_series(double w) {
  double sum = 0.0;
  double power = w;
  for (int l = 1; l < 200 && power > 0.0; ++l) {
    const double term = power / (static_cast<double>(l) * l);
    sum += term;
    if (term < 1e-17 * sum) break;
    power *= w;
  }
  return sum;
}

}  // namespace

Complex ln_gamma(Complex z) {
  require_right_half_plane(z, "ln_gamma");
  const int shift = shift_count(z);
  Complex correction = 0.0;
  for (int k = 0; k < shift; ++k) correction += std::log(z + static_cast<double>(k));
  return stirling_ln_gamma(z + static_cast<double>(shift)) - correction;
}

Complex digamma(Complex z) {
  require_right_half_plane(z, "digamma");
  const int shift = shift_count(z);
  Complex correction = 0.0;
  for (int k = shift - 1; k >= 0; --k) correction += 1.0 / (z + static_cast<double>(k));
  return asymptotic_digamma(z + static_cast<double>(shift)) - correction;
}

double zeta_int(int k) {
  if (k < 2) throw DomainError("zeta_int: requires k >= 2");
  if (k <= kZetaTableSize) return zeta_table()[k];
  // 2^-k < 1e-19 here; the tail beyond l = 3 is below double resolution.
  return 1.0 + std::pow(2.0, -k) + std::pow(3.0, -k);
}

double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0) || !(q > 0.0) || !std::isfinite(s) || !std::isfinite(q)) {
    throw DomainError("hurwitz_zeta: requires s > 1 and q > 0");
  }
  return euler_maclaurin_zeta(s, q);
}

double dilog_exp(double y) {
  if (std::isnan(y) || y < 0.0) throw DomainError("dilog_exp: requires y >= 0");
  if (y == 0.0) return pi * pi / 6.0;
  if (std::isinf(y)) return 0.0;
  if (y >= std::log(2.0)) return dilog_series(std::exp(-y));
  // e^-y > 1/2: reflect through Li2(x) + Li2(1-x) = zeta(2) - ln(x) ln(1-x).
  const double one_minus_x = -std::expm1(-y);
  return pi * pi / 6.0 + y * std::log(one_minus_x) - dilog_series(one_minus_x);
}

double log1mexp(double u) {
  if (std::isnan(u) || u > 0.0) throw DomainError("log1mexp: requires u <= 0");
  if (u == 0.0) return -std::numeric_limits<double>::infinity();
  if (u > -0.6931471805599453) return std::log(-std::expm1(u));
  return std::log1p(-std::exp(u));
}

}  // namespace tailtest::specfun
