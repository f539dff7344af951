#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "tailtest/tailtest.h"

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_STREQ(tt_version(), "0.1.0");
  EXPECT_STREQ(tt_status_string(TT_ERR_CONVERGENCE), "convergence failure");
  EXPECT_STREQ(tt_method_name(TT_METHOD_GAMMA_CLOSED_FORM), "gamma_closed_form");
}

TEST(CApi, ModelSampleStatisticPValue) {
  tt_model* model = nullptr;
  ASSERT_EQ(tt_model_parse("exponential(1)", &model), TT_OK);
  const double x = std::log(2.0);
  tt_sample* sample = nullptr;
  ASSERT_EQ(tt_sample_from_array(&x, 1, &sample), TT_OK);
  tt_statistic stat;
  ASSERT_EQ(tt_compute_statistic(sample, model, 1.0, TT_SIDE_RIGHT, 0.0, &stat), TT_OK);
  EXPECT_NEAR(stat.value, std::log(2.0), 1e-15);
  tt_pvalue pv;
  ASSERT_EQ(tt_p_value(stat.value, stat.infinite, 1.0, 1, nullptr, &pv), TT_OK);
  EXPECT_NEAR(pv.p, 0.5, 1e-15);
  EXPECT_EQ(pv.method, TT_METHOD_GAMMA_CLOSED_FORM);
  char buf[64];
  ASSERT_EQ(tt_model_describe(model, buf, sizeof buf), TT_OK);
  EXPECT_STREQ(buf, "exponential(1)");
  EXPECT_EQ(tt_model_describe(model, buf, 3), TT_ERR_INVALID_ARGUMENT);
  tt_sample_free(sample);
  tt_model_free(model);
}

TEST(CApi, ErrorCodesAndMessages) {
  tt_model* model = nullptr;
  EXPECT_EQ(tt_model_parse("normal(0,-1)", &model), TT_ERR_INPUT);
  EXPECT_NE(std::strstr(tt_last_error(), "sigma"), nullptr);
  EXPECT_EQ(model, nullptr);
  EXPECT_EQ(tt_model_parse(nullptr, &model), TT_ERR_INVALID_ARGUMENT);
  double v;
  EXPECT_EQ(tt_ks_p(-1.0, &v), TT_ERR_DOMAIN);
  EXPECT_EQ(tt_cumulant(1, 1.0, 1, &v), TT_OK);
  EXPECT_STREQ(tt_last_error(), "");
  tt_sample* s = nullptr;
  EXPECT_EQ(tt_sample_read("/nonexistent", nullptr, &s), TT_ERR_INPUT);
  tt_inversion_settings settings;
  tt_inversion_settings_default(&settings);
  settings.kernel = TT_KERNEL_NEVER;
  settings.max_truncation = 2.0;
  tt_inversion_info info;
  EXPECT_EQ(tt_null_cdf(1.0, 2.0, 1, &settings, &info), TT_ERR_CONVERGENCE);
}

TEST(CApi, InvalidModelCode) {
  tt_model* model = nullptr;
  ASSERT_EQ(tt_model_parse("uniform(0,1)", &model), TT_OK);
  const double x = 0.5;
  tt_sample* sample = nullptr;
  ASSERT_EQ(tt_sample_from_array(&x, 1, &sample), TT_OK);
  tt_statistic stat;
  EXPECT_EQ(tt_compute_statistic(sample, model, -1.0, TT_SIDE_RIGHT, 0.0, &stat), TT_ERR_INPUT);
  tt_sample_free(sample);
  tt_model_free(model);
}

TEST(CApi, NullDistributionFunctions) {
  double re, im;
  ASSERT_EQ(tt_char_fn(1.0, 1.0, 1, &re, &im), TT_OK);
  EXPECT_NEAR(re, 0.5, 1e-15);
  EXPECT_NEAR(im, 0.5, 1e-15);
  double k2;
  ASSERT_EQ(tt_cumulant(2, 2.0, 4, &k2), TT_OK);
  EXPECT_NEAR(k2, 0.7101318, 1e-7);
  tt_inversion_info info;
  ASSERT_EQ(tt_null_cdf(std::log(2.0), 1.0, 1, nullptr, &info), TT_OK);
  EXPECT_NEAR(info.value, 0.5, 1e-10);
  ASSERT_EQ(tt_limit_cdf(1.0, 1.0, nullptr, &info), TT_OK);
  EXPECT_NEAR(info.value, 0.439166, 1e-5);
  std::vector<double> grid{3.0, 1.0, 2.0}, values(3), errors(3);
  ASSERT_EQ(tt_null_cdf_grid(grid.data(), grid.size(), 2.0, 4, nullptr, values.data(), errors.data()), TT_OK);
  EXPECT_LT(values[1], values[2]);
  EXPECT_LT(values[2], values[0]);
  tt_series series;
  ASSERT_EQ(tt_limit_cdf_series(20.0, 20.0, 1.0, &series), TT_OK);
  EXPECT_NEAR(series.value, 0.9762674, 2e-7);
}

TEST(CApi, MonteCarloAndKs) {
  tt_mc_settings mc;
  tt_mc_settings_default(&mc);
  mc.replicates = 1000;
  std::vector<double> buf(999);
  EXPECT_EQ(tt_mc_sample_null(1.0, 1, &mc, buf.data(), buf.size()), TT_ERR_INPUT);
  buf.resize(1000);
  ASSERT_EQ(tt_mc_sample_null(1.0, 1, &mc, buf.data(), buf.size()), TT_OK);
  tt_pvalue pv;
  ASSERT_EQ(tt_mc_p_value(1e9, 1.0, 1, &mc, &pv), TT_OK);
  EXPECT_NEAR(pv.p, 1.0 / 1001.0, 1e-15);

  const double a[] = {0.25, 0.75};
  tt_sample* s = nullptr;
  ASSERT_EQ(tt_sample_from_array(a, 2, &s), TT_OK);
  tt_model* u = nullptr;
  ASSERT_EQ(tt_model_parse("uniform(0,1)", &u), TT_OK);
  tt_ks ks;
  ASSERT_EQ(tt_ks_one_sample(s, u, &ks), TT_OK);
  EXPECT_NEAR(ks.lambda, 0.3535534, 1e-7);
  EXPECT_TRUE(ks.n_b_infinite);
  ASSERT_EQ(tt_ks_two_sample(s, s, &ks), TT_OK);
  EXPECT_EQ(ks.distance, 0.0);
  EXPECT_EQ(ks.p, 1.0);
  tt_sample_free(s);
  tt_model_free(u);
}

TEST(CApi, EcdfHandlesAndLaws) {
  const double x1[] = {0.0, 2.0}, x2[] = {1.0, 3.0};
  tt_sample *s1 = nullptr, *s2 = nullptr;
  ASSERT_EQ(tt_sample_from_array(x1, 2, &s1), TT_OK);
  ASSERT_EQ(tt_sample_from_array(x2, 2, &s2), TT_OK);
  const tt_sample* list[] = {s1, s2};
  tt_model* m = nullptr;
  ASSERT_EQ(tt_model_from_samples(list, 2, &m), TT_OK);
  double v;
  ASSERT_EQ(tt_model_cdf(m, 1.5, &v), TT_OK);
  EXPECT_DOUBLE_EQ(v, 0.5);
  ASSERT_EQ(tt_point_probability(0.5, 0.5, 1, 2, &v), TT_OK);
  EXPECT_NEAR(v, 0.5, 1e-15);
  ASSERT_EQ(tt_gaussian_density(0.5, 0.5, 1, 100, &v), TT_OK);
  EXPECT_NEAR(v, 7.9788456, 1e-7);
  EXPECT_EQ(tt_point_probability(0.3, 0.5, 1, 2, &v), TT_ERR_DOMAIN);
  ASSERT_EQ(tt_dispersion(0.2, 5, 5, &v), TT_OK);
  EXPECT_NEAR(v, 0.08, 1e-15);
  tt_model_free(m);
  tt_sample_free(s1);
  tt_sample_free(s2);
}

TEST(CApi, PowerStudy) {
  tt_model *null_model = nullptr, *alt = nullptr;
  ASSERT_EQ(tt_model_parse("normal(0,1)", &null_model), TT_OK);
  ASSERT_EQ(tt_model_parse("normal(0.5,1)", &alt), TT_OK);
  const double exps[] = {1.0, 2.0};
  const tt_side sides[] = {TT_SIDE_RIGHT};
  tt_power_config cfg{};
  cfg.null_model = null_model;
  cfg.alternative = alt;
  cfg.n = 40;
  cfg.exponents = exps;
  cfg.exponent_count = 2;
  cfg.sides = sides;
  cfg.side_count = 1;
  cfg.replicates = 200;
  cfg.seed = 5;
  cfg.threads = 1;
  cfg.level = 0.05;
  cfg.include_ks = 1;
  tt_pvalue_policy_default(&cfg.policy);
  size_t count = 0;
  EXPECT_EQ(tt_power_study(&cfg, nullptr, 0, &count), TT_ERR_INPUT);
  EXPECT_EQ(count, 3u);
  std::vector<tt_power_row> rows(count);
  ASSERT_EQ(tt_power_study(&cfg, rows.data(), rows.size(), &count), TT_OK);
  EXPECT_STREQ(rows[2].test, "KS");
  for (const auto& r : rows) EXPECT_GT(r.power, 0.3);
  cfg.replicates = 0;
  EXPECT_EQ(tt_power_study(&cfg, rows.data(), rows.size(), &count), TT_ERR_INPUT);
  tt_model_free(null_model);
  tt_model_free(alt);
}
