#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "oracles.hpp"
#include "tailtest/asymptotic.hpp"
#include "tailtest/errors.hpp"
#include "tailtest/null_dist.hpp"
#include "tailtest/specfun.hpp"

using namespace tailtest;

namespace {

// k-th raw moment of the limit density, s = u^2 to tame the s^(1/alpha - 1)
// behavior at the origin.
double limit_moment(int k, double alpha) {
  const LimitSpec spec(alpha);
  const double mean = specfun::zeta_int(2);
  // The density decays like e^(-s/alpha); beyond this point the mass is < 1e-14.
  const double upper = std::sqrt(mean + 40.0 * alpha + 8.0);
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  return GK::integrate(
      [&](double u) {
        const double s = u * u;
        return 2.0 * u * std::pow(s, k) * limit_pdf(s, spec);
      },
      0.0, upper, 6, 1e-10);
}

}  // namespace

TEST(LimitSpec, Validates) {
  EXPECT_THROW(LimitSpec(0.0), InputError);
  EXPECT_THROW(LimitSpec(-2.0), InputError);
}

TEST(LimitCdf, PrintedConstants) {
  const LimitSpec spec(1.0);
  EXPECT_NEAR(limit_cdf(1.0, spec), 0.439166, 1e-5);
  EXPECT_NEAR(limit_cdf(3.0, spec), 0.8390636, 1e-5);
  EXPECT_NEAR(limit_cdf(7.0, spec), 0.9898427, 1e-5);
  EXPECT_NEAR(limit_cdf(17.0, spec), 0.999995, 1e-6);
}

TEST(LimitCdf, PowerSplitRouteAgrees) {
  for (double alpha : {2.5, 5.0, 10.0, 20.0}) {
    const LimitSpec spec(alpha);
    for (double y : {0.5, 1.0, 2.0, 4.0}) {
      EXPECT_NEAR(limit_cdf(y * alpha, spec), limit_cdf_power_split(y * alpha, spec), 1e-7) << alpha << " " << y;
    }
  }
  EXPECT_THROW(limit_cdf_power_split(1.0, LimitSpec(1.0)), DomainError);
}

TEST(LimitCdf, MonotoneAndBounded) {
  const LimitSpec spec(0.5);
  double prev = 0.0;
  for (double s = 0.0; s < 12.0; s += 0.2) {
    const double g = limit_cdf(s, spec);
    EXPECT_GE(g, prev);
    EXPECT_LE(g, 1.0);
    prev = g;
  }
}

TEST(LimitPdf, SupportAndMoments) {
  EXPECT_EQ(limit_pdf(-1.0, LimitSpec(1.0)), 0.0);
  for (double alpha : {0.5, 1.0, 2.0}) {
    const double m0 = limit_moment(0, alpha);
    const double m1 = limit_moment(1, alpha);
    const double m2 = limit_moment(2, alpha);
    const double m3 = limit_moment(3, alpha);
    const double k1 = m1;
    const double k2 = m2 - m1 * m1;
    const double k3 = m3 - 3.0 * m2 * m1 + 2.0 * m1 * m1 * m1;
    EXPECT_NEAR(m0, 1.0, 1e-6) << alpha;
    EXPECT_NEAR(k1, specfun::zeta_int(2), 1e-5) << alpha;
    EXPECT_NEAR(k2, 2.0 * specfun::zeta_int(3) * alpha, 1e-5) << alpha;
    EXPECT_NEAR(k3, 6.0 * specfun::zeta_int(4) * alpha * alpha, 1e-5) << alpha;
  }
}

TEST(LimitCdf, FiniteLawConvergesLikeOneOverN) {
  const double limit = limit_cdf(1.0, LimitSpec(1.0));
  std::vector<double> gaps;
  for (std::int64_t n : {5, 10, 20, 40}) {
    gaps.push_back(std::abs(null_cdf(1.0, NullSpec(static_cast<double>(n), n)) - limit));
  }
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    EXPECT_LT(gaps[i], gaps[i - 1]);
    const double ratio = gaps[i] / gaps[i - 1];
    EXPECT_GE(ratio, 0.3);
    EXPECT_LE(ratio, 0.7);
  }
}

TEST(SecondOrderTerm, EndpointsAndOracle) {
  EXPECT_NEAR(second_order_term(0.0), -oracle::kPi * oracle::kPi / 12.0, 1e-10);
  EXPECT_NEAR(second_order_term(1e-12), -oracle::kPi * oracle::kPi / 12.0, 1e-10);
  EXPECT_NEAR(second_order_term(INFINITY), 0.0, 1e-10);
  EXPECT_NEAR(second_order_term(60.0), 0.0, 1e-10);
  for (double y : {0.05, 0.3, 1.0, 2.0, 5.0, 12.0}) {
    EXPECT_NEAR(second_order_term(y), oracle::second_order_term(y), 1e-12) << y;
  }
  EXPECT_NEAR(second_order_term(1.0), -0.43371471636798908, 1e-12);  // 30-digit reference
  EXPECT_THROW(second_order_term(-0.1), DomainError);
}

TEST(SecondOrderTerm, StrictlyIncreasing) {
  double prev = -1.0;
  for (int i = 0; i < 100; ++i) {
    const double y = 1e-3 * std::pow(3e4, i / 99.0);
    const double v = second_order_term(y);
    EXPECT_GT(v, prev) << y;
    EXPECT_GE(v, -oracle::kPi * oracle::kPi / 12.0);
    EXPECT_LE(v, 0.0);
    prev = v;
  }
}

TEST(LimitSeries, HandEvaluatedExample) {
  const auto s = limit_cdf_series(20.0, LimitSpec(20.0));
  EXPECT_DOUBLE_EQ(s.y, 1.0);
  EXPECT_NEAR(s.leading, 0.9773272, 1e-7);
  EXPECT_NEAR(s.value, 0.9762674, 2e-7);
  EXPECT_EQ(s.k_max, 2);
  EXPECT_FALSE(s.below_threshold);
  EXPECT_TRUE(limit_cdf_series(1.0, LimitSpec(0.5)).below_threshold);
}

TEST(LimitSeries, WithinBoundOfIntegral) {
  for (double alpha : {5.0, 10.0, 20.0}) {
    for (double y : {0.5, 1.0, 2.0, 4.0}) {
      const auto s = limit_cdf_series(y * alpha, LimitSpec(alpha));
      const double exact = limit_cdf(y * alpha, LimitSpec(alpha));
      const double bound = std::max(1e-4, 2.0 * std::abs(second_order_term(y)) / std::pow(alpha, 3));
      EXPECT_LE(std::abs(s.value - exact), bound) << alpha << " " << y;
    }
  }
}

TEST(LimitSeries, NoFirstOrderTerm) {
  // alpha (G / leading - 1) -> 0 as alpha grows at fixed y.
  for (double y : {0.5, 2.0}) {
    double prev = INFINITY;
    for (double alpha : {10.0, 40.0, 160.0}) {
      const auto s = limit_cdf_series(y * alpha, LimitSpec(alpha));
      const double g = limit_cdf(y * alpha, LimitSpec(alpha));
      const double coeff = std::abs(alpha * (g / s.leading - 1.0));
      EXPECT_LT(coeff, prev);
      prev = coeff;
    }
    EXPECT_LT(prev, 5e-3);
  }
}
