#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "tailtest/ecdf.hpp"
#include "tailtest/errors.hpp"
#include "tailtest/rng.hpp"
#include "tailtest/statistic.hpp"

using namespace tailtest;

TEST(AveragedEcdf, SingleSampleIsItsOwnEcdf) {
  const std::vector<Sample> s{Sample({3.0, 1.0, 2.0, 2.0})};
  const AveragedEcdf m(s);
  EXPECT_EQ(m.cdf(0.9), 0.0);
  EXPECT_EQ(m.cdf(1.0), 0.25);
  EXPECT_EQ(m.cdf(2.0), 0.75);
  EXPECT_EQ(m.cdf(2.5), 0.75);
  EXPECT_EQ(m.cdf(3.0), 1.0);
  EXPECT_EQ(m.breakpoints().size(), 3u);
}

TEST(AveragedEcdf, TwoUnitSteps) {
  const std::vector<Sample> s{Sample({0.0}), Sample({1.0})};
  const AveragedEcdf m(s);
  EXPECT_EQ(m.cdf(-0.1), 0.0);
  EXPECT_EQ(m.cdf(0.0), 0.5);
  EXPECT_EQ(m.cdf(0.99), 0.5);
  EXPECT_EQ(m.cdf(1.0), 1.0);
}

TEST(AveragedEcdf, QuarterSteps) {
  const std::vector<Sample> s{Sample({0.0, 2.0}), Sample({1.0, 3.0})};
  const AveragedEcdf m(s);
  const std::vector<double> bp{0.0, 1.0, 2.0, 3.0};
  EXPECT_EQ(m.breakpoints(), bp);
  for (int i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(m.mu_values()[i], 0.25 * (i + 1));
    EXPECT_DOUBLE_EQ(m.cdf(bp[i]), 0.25 * (i + 1));
    EXPECT_DOUBLE_EQ(m.cdf(bp[i] - 1e-9), 0.25 * i);
  }
}

TEST(AveragedEcdf, ValidCdfModel) {
  RandomStream rng(5, 0);
  std::vector<Sample> s;
  for (int j = 0; j < 4; ++j) {
    std::vector<double> v(7);
    for (auto& x : v) x = std::floor(10.0 * rng.uniform());
    s.emplace_back(v);
  }
  const AveragedEcdf m(s);
  const double step = 1.0 / 28.0;
  EXPECT_EQ(m.cdf(m.breakpoints().front() - 1.0), 0.0);
  EXPECT_EQ(m.cdf(m.breakpoints().back() + 1.0), 1.0);
  double prev = 0.0;
  for (double x : m.breakpoints()) {
    const double v = m.cdf(x);
    EXPECT_GT(v, prev);
    EXPECT_NEAR(v / step, std::round(v / step), 1e-9);
    EXPECT_EQ(m.cdf(x + 1e-12), v);  // right-continuous
    prev = v;
  }
  EXPECT_EQ(m.mu_values().back(), 1.0);
}

TEST(AveragedEcdf, MismatchedLengthsRejected) {
  const std::vector<Sample> s{Sample({0.0, 1.0}), Sample({1.0})};
  EXPECT_THROW(AveragedEcdf{s}, InputError);
  EXPECT_THROW(AveragedEcdf{std::vector<Sample>{}}, InputError);
}

TEST(AveragedEcdf, InfiniteStatisticAtLargestBreakpoint) {
  const std::vector<Sample> s{Sample({0.0, 1.0}), Sample({2.0, 3.0})};
  const AveragedEcdf m(s);
  EXPECT_TRUE(a_statistic(Sample({1.5, 3.0}), m, 1.0, TailSide::Right).infinite);
  EXPECT_FALSE(a_statistic(Sample({1.5, 2.5}), m, 1.0, TailSide::Right).infinite);
}

TEST(PointProbability, SmallExamples) {
  EXPECT_NEAR(point_probability(0.5, 0.5, 1, 2), 0.5, 1e-15);
  EXPECT_NEAR(point_probability(0.0, 0.5, 2, 1), 0.25, 1e-15);
  EXPECT_EQ(point_probability(0.0, 0.0, 2, 3), 1.0);
  EXPECT_EQ(point_probability(1.0, 1.0, 2, 3), 1.0);
  EXPECT_EQ(point_probability(0.5, 1.0, 2, 3), 0.0);
  EXPECT_THROW(point_probability(0.3, 0.5, 1, 2), DomainError);
  EXPECT_THROW(point_probability(0.5, 1.5, 1, 2), DomainError);
}

TEST(PointProbability, SumsToOne) {
  for (std::int64_t kn : {1, 2, 10, 37, 100, 101, 150, 200}) {
    for (double F : {0.1, 0.3, 0.5, 0.9}) {
      double sum = 0.0;
      for (std::int64_t j = 0; j <= kn; ++j) {
        sum += point_probability(static_cast<double>(j) / static_cast<double>(kn), F, 1, kn);
      }
      EXPECT_NEAR(sum, 1.0, 1e-12) << kn << " " << F;
    }
  }
}

TEST(PointProbability, MatchesLongDoubleBinomial) {
  for (std::int64_t kn : {40, 150, 1000}) {
    for (std::int64_t j : {std::int64_t{0}, kn / 3, kn / 2, kn}) {
      const double mu = static_cast<double>(j) / static_cast<double>(kn);
      EXPECT_NEAR(point_probability(mu, 0.4, kn, 1), oracle::binomial_pmf(kn, j, 0.4),
                  1e-12 * std::max(1e-300, oracle::binomial_pmf(kn, j, 0.4)) + 1e-300);
    }
  }
}

TEST(GaussianApproximation, PeakAndSymmetry) {
  EXPECT_NEAR(gaussian_density(0.5, 0.5, 1, 100), 7.9788456, 1e-7);
  EXPECT_NEAR(gaussian_point_probability(0.5, 0.5, 1, 100), 7.9788456 / 100.0, 1e-9);
  for (double d : {0.01, 0.05, 0.2}) {
    EXPECT_DOUBLE_EQ(gaussian_density(0.3 + d, 0.3, 4, 25), gaussian_density(0.3 - d, 0.3, 4, 25));
  }
  EXPECT_THROW(gaussian_density(0.5, 0.0, 1, 10), DomainError);
  EXPECT_THROW(gaussian_density(0.5, 1.0, 1, 10), DomainError);
}

TEST(GaussianApproximation, CloseToBinomialAtMode) {
  const double exact_density = 400.0 * oracle::binomial_pmf(400, 200, 0.5);
  EXPECT_NEAR(gaussian_density(0.5, 0.5, 4, 100) / exact_density, 1.0, 0.02);
}

TEST(Dispersion, Values) {
  EXPECT_NEAR(dispersion(0.5, 1, 100), 0.05, 1e-15);
  EXPECT_EQ(dispersion(0.0, 3, 5), 0.0);
  EXPECT_EQ(dispersion(1.0, 3, 5), 0.0);
  EXPECT_NEAR(dispersion(0.2, 5, 5), 0.08, 1e-15);
}

TEST(Dispersion, MatchesSimulation) {
  // mu at x with F(x) = 0.3, averaged over k = 5 uniform samples of n = 20.
  const int k = 5, n = 20, reps = 10000;
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < reps; ++r) {
    RandomStream rng(99, static_cast<std::uint64_t>(r));
    std::vector<Sample> samples;
    for (int j = 0; j < k; ++j) {
      std::vector<double> v(n);
      for (auto& x : v) x = rng.uniform();
      samples.emplace_back(v);
    }
    const double mu = AveragedEcdf(samples).cdf(0.3);
    sum += mu;
    sum2 += mu * mu;
  }
  const double mean = sum / reps;
  const double sd = std::sqrt(sum2 / reps - mean * mean);
  EXPECT_NEAR(sd / dispersion(0.3, k, n), 1.0, 0.05);
}
