#include <gtest/gtest.h>

#include <cmath>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "oracles.hpp"
#include "tailtest/errors.hpp"
#include "tailtest/specfun.hpp"

using namespace tailtest::specfun;
using tailtest::DomainError;

TEST(LnGamma, MatchesRealLogGamma) {
  for (double x : {0.01, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 17.25, 100.0, 1e4}) {
    EXPECT_NEAR(ln_gamma(Complex(x, 0.0)).real(), std::lgamma(x), 1e-13 * std::max(1.0, std::abs(std::lgamma(x))))
        << x;
  }
}

TEST(LnGamma, ModulusIdentitiesOnVerticalLines) {
  for (double y : {0.1, 0.7, 2.0, 5.0, 20.0, 80.0}) {
    // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
    const double half = 2.0 * ln_gamma(Complex(0.5, y)).real();
    const double expect_half = std::log(oracle::kPi) - (oracle::kPi * y + std::log1p(std::exp(-2 * oracle::kPi * y)) - std::log(2.0));
    EXPECT_NEAR(half, expect_half, 1e-12 * std::max(1.0, std::abs(expect_half))) << y;
    // |Gamma(1 + iy)|^2 = pi y / sinh(pi y)
    const double one = 2.0 * ln_gamma(Complex(1.0, y)).real();
    const double expect_one = std::log(oracle::kPi * y) - (oracle::kPi * y + std::log1p(-std::exp(-2 * oracle::kPi * y)) - std::log(2.0));
    EXPECT_NEAR(one, expect_one, 1e-12 * std::max(1.0, std::abs(expect_one))) << y;
  }
}

TEST(LnGamma, RecurrenceAndConjugation) {
  for (Complex z : {Complex(0.3, 1.0), Complex(2.5, -7.0), Complex(1.0, 40.0), Complex(0.05, 0.01)}) {
    const Complex lhs = ln_gamma(z + 1.0);
    const Complex rhs = ln_gamma(z) + std::log(z);
    EXPECT_NEAR(lhs.real(), rhs.real(), 1e-12 * std::max(1.0, std::abs(lhs)));
    EXPECT_NEAR(std::remainder(lhs.imag() - rhs.imag(), 2 * oracle::kPi), 0.0, 1e-11);
    const Complex c = ln_gamma(std::conj(z));
    EXPECT_DOUBLE_EQ(c.real(), ln_gamma(z).real());
    EXPECT_DOUBLE_EQ(c.imag(), -ln_gamma(z).imag());
  }
}

TEST(LnGamma, ContinuousImaginaryPartAlongLine) {
  // The analytic continuation has no 2 pi jumps along z = 1 - i t.
  double prev = 0.0;
  for (double t = 0.0; t <= 200.0; t += 0.05) {
    const double im = ln_gamma(Complex(1.0, -t)).imag();
    EXPECT_LT(std::abs(im - prev), 1.0) << t;
    prev = im;
  }
}

TEST(LnGamma, RejectsLeftHalfPlane) {
  EXPECT_THROW(ln_gamma(Complex(0.0, 1.0)), DomainError);
  EXPECT_THROW(ln_gamma(Complex(-1.5, 0.0)), DomainError);
  EXPECT_THROW(ln_gamma(Complex(NAN, 0.0)), DomainError);
}

TEST(Digamma, SpecialValues) {
  EXPECT_NEAR(digamma(Complex(1.0, 0.0)).real(), -oracle::kEulerGamma, 1e-15);
  EXPECT_NEAR(digamma(Complex(0.5, 0.0)).real(), -oracle::kEulerGamma - 2.0 * std::log(2.0), 1e-14);
  for (double x : {0.1, 0.9, 1.3, 4.0, 25.0, 1e3}) {
    EXPECT_NEAR(digamma(Complex(x, 0.0)).real(), boost::math::digamma(x), 1e-13 * std::max(1.0, std::abs(boost::math::digamma(x))));
  }
}

TEST(Digamma, ImaginaryPartIdentities) {
  for (double y : {0.2, 1.0, 3.0, 10.0, 100.0}) {
    EXPECT_NEAR(digamma(Complex(0.5, y)).imag(), 0.5 * oracle::kPi * std::tanh(oracle::kPi * y), 1e-13);
    EXPECT_NEAR(digamma(Complex(1.0, y)).imag(), -0.5 / y + 0.5 * oracle::kPi / std::tanh(oracle::kPi * y), 1e-13);
  }
}

TEST(Digamma, Recurrence) {
  for (Complex z : {Complex(0.2, 0.3), Complex(1.0, -5.0), Complex(3.0, 12.0)}) {
    const Complex d = digamma(z + 1.0) - digamma(z) - 1.0 / z;
    EXPECT_LT(std::abs(d), 1e-13);
  }
}

TEST(ZetaInt, MatchesBoostAndClosedForms) {
  EXPECT_NEAR(zeta_int(2), oracle::kPi * oracle::kPi / 6.0, 1e-15);
  EXPECT_NEAR(zeta_int(4), std::pow(oracle::kPi, 4) / 90.0, 1e-15);
  for (int k = 2; k <= 80; ++k) {
    EXPECT_NEAR(zeta_int(k), boost::math::zeta(static_cast<double>(k)), 4e-16 * zeta_int(k)) << k;
  }
  EXPECT_THROW(zeta_int(1), DomainError);
}

TEST(HurwitzZeta, Identities) {
  for (double s : {1.5, 2.0, 3.0, 7.0}) {
    EXPECT_NEAR(hurwitz_zeta(s, 1.0), boost::math::zeta(s), 1e-14 * boost::math::zeta(s));
    // zeta(s, 1/2) = (2^s - 1) zeta(s)
    EXPECT_NEAR(hurwitz_zeta(s, 0.5), (std::pow(2.0, s) - 1.0) * boost::math::zeta(s), 1e-13 * hurwitz_zeta(s, 0.5));
    for (double q : {0.1, 0.75, 2.3, 40.0}) {
      EXPECT_NEAR(hurwitz_zeta(s, q) - hurwitz_zeta(s, q + 1.0), std::pow(q, -s), 1e-13 * std::pow(q, -s));
    }
  }
  EXPECT_THROW(hurwitz_zeta(1.0, 1.0), DomainError);
  EXPECT_THROW(hurwitz_zeta(2.0, 0.0), DomainError);
}

TEST(DilogExp, SeriesAndSpecialValues) {
  EXPECT_NEAR(dilog_exp(0.0), oracle::kPi * oracle::kPi / 6.0, 1e-15);
  const double l2 = std::log(2.0);
  EXPECT_NEAR(dilog_exp(l2), oracle::kPi * oracle::kPi / 12.0 - 0.5 * l2 * l2, 1e-15);
  for (double y : {0.01, 0.1, 0.5, 0.69, 0.7, 1.0, 3.0, 10.0, 40.0}) {
    EXPECT_NEAR(dilog_exp(y), oracle::dilog_exp(y), 1e-13) << y;
  }
  EXPECT_NEAR(dilog_exp(1.0), 0.40875428734889627, 1e-14);  // 30-digit reference
  EXPECT_EQ(dilog_exp(INFINITY), 0.0);
  EXPECT_THROW(dilog_exp(-1.0), DomainError);
}

TEST(Log1mexp, AccurateAtBothEnds) {
  EXPECT_NEAR(log1mexp(-1e-20), std::log(1e-20), 1e-12);
  EXPECT_NEAR(log1mexp(-50.0), -std::exp(-50.0), 1e-35);
  EXPECT_NEAR(log1mexp(-std::log(2.0)), -std::log(2.0), 1e-15);
  EXPECT_EQ(log1mexp(-INFINITY), 0.0);
}
