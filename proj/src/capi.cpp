#include "tailtest/tailtest.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <numeric>
#include <string>
#include <vector>

#include "tailtest/asymptotic.hpp"
#include "tailtest/baseline_ks.hpp"
#include "tailtest/dist_spec.hpp"
#include "tailtest/ecdf.hpp"
#include "tailtest/errors.hpp"
#include "tailtest/mc_oracle.hpp"
#include "tailtest/power_study.hpp"
#include "tailtest/pvalue.hpp"
#include "tailtest/sample_io.hpp"

struct tt_model {
  tailtest::CdfModelPtr model;
};

struct tt_sample {
  tailtest::Sample sample;
};

namespace {

using namespace tailtest;

thread_local std::string g_last_error;
thread_local std::size_t g_last_line = 0;

tt_status fail(tt_status status, const char* message, std::size_t line = 0) {
  g_last_error = message;
  g_last_line = line;
  return status;
}

template <class F>
tt_status guard(F&& body) {
  try {
    g_last_error.clear();
    g_last_line = 0;
    body();
    return TT_OK;
  } catch (const ParseError& e) {
    return fail(TT_ERR_PARSE, e.what(), e.line());
  } catch (const InputError& e) {
    return fail(TT_ERR_INPUT, e.what());
  } catch (const DomainError& e) {
    return fail(TT_ERR_DOMAIN, e.what());
  } catch (const InvalidModelError& e) {
    return fail(TT_ERR_INVALID_MODEL, e.what());
  } catch (const ConvergenceError& e) {
    return fail(TT_ERR_CONVERGENCE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TT_ERR_INTERNAL, "unknown error");
  }
}

template <class... P>
void require(const P*... ptrs) {
  if (((ptrs == nullptr) || ...)) throw InputError("null pointer argument");
}

InversionSettings to_cpp(const tt_inversion_settings* s) {
  InversionSettings out;
  if (s == nullptr) return out;
  out.rel_tol = s->rel_tol;
  out.max_truncation = s->max_truncation;
  out.plain_truncation_limit = s->plain_truncation_limit;
  out.quadrature_order = s->quadrature_order;
  switch (s->kernel) {
    case TT_KERNEL_NEVER: out.kernel = KernelPolicy::Never; break;
    case TT_KERNEL_ALWAYS: out.kernel = KernelPolicy::Always; break;
    default: out.kernel = KernelPolicy::Auto; break;
  }
  return out;
}

McSettings to_cpp(const tt_mc_settings* s) {
  McSettings out;
  if (s == nullptr) return out;
  out.replicates = s->replicates;
  out.seed = s->seed;
  out.chunk_size = s->chunk_size;
  out.threads = s->threads;
  return out;
}

PValuePolicy to_cpp(const tt_pvalue_policy* s) {
  PValuePolicy out;
  if (s == nullptr) return out;
  switch (s->method) {
    case TT_POLICY_EXACT: out.method = MethodPolicy::Exact; break;
    case TT_POLICY_ASYMPTOTIC: out.method = MethodPolicy::Asymptotic; break;
    case TT_POLICY_MONTE_CARLO: out.method = MethodPolicy::MonteCarlo; break;
    case TT_POLICY_AUTO: out.method = MethodPolicy::Auto; break;
    default: throw InputError("unknown method policy");
  }
  out.asymptotic_min_n = s->asymptotic_min_n;
  out.asymptotic_min_a = s->asymptotic_min_a;
  out.series_min_alpha = s->series_min_alpha;
  out.monte_carlo_fallback = s->monte_carlo_fallback != 0;
  out.inversion = to_cpp(&s->inversion);
  out.monte_carlo = to_cpp(&s->monte_carlo);
  return out;
}

TailSide to_cpp(tt_side side) {
  switch (side) {
    case TT_SIDE_RIGHT: return TailSide::Right;
    case TT_SIDE_LEFT: return TailSide::Left;
  }
  throw InputError("unknown tail side");
}

tt_pvalue_method to_c(PValueMethod m) {
  switch (m) {
    case PValueMethod::GammaClosedForm: return TT_METHOD_GAMMA_CLOSED_FORM;
    case PValueMethod::Inversion: return TT_METHOD_INVERSION;
    case PValueMethod::AsymptoticSeries: return TT_METHOD_ASYMPTOTIC_SERIES;
    case PValueMethod::AsymptoticIntegral: return TT_METHOD_ASYMPTOTIC_INTEGRAL;
    case PValueMethod::MonteCarlo: return TT_METHOD_MONTE_CARLO;
  }
  return TT_METHOD_INVERSION;
}

void to_c(const PValueReport& r, tt_pvalue* out) {
  out->p = r.p;
  out->method = to_c(r.method);
  out->error_estimate = r.error_estimate;
  out->infinite_statistic = r.infinite_statistic ? 1 : 0;
  out->fallback = r.fallback ? 1 : 0;
}

void to_c(const InversionResult& r, tt_inversion_info* out) {
  out->value = r.value;
  out->error_estimate = r.error_estimate;
  out->truncation = r.truncation;
  out->tail_bound = r.tail_bound;
  out->kernel_subtracted = r.kernel_subtracted ? 1 : 0;
  out->clipped = r.clipped;
  out->evaluations = r.evaluations;
}

void to_c(const KsResult& r, tt_ks* out) {
  out->distance = r.distance;
  out->lambda = r.lambda;
  out->p = r.p;
  out->n_a = r.n_a;
  out->n_b = r.n_b;
  out->n_b_infinite = r.n_b_infinite ? 1 : 0;
  out->small_sample = r.small_sample ? 1 : 0;
}

// Evaluates a CDF on a grid in increasing order and enforces monotonicity.
template <class Eval>
void monotone_grid(const double* sigmas, std::size_t count, double* values, double* errors, Eval eval) {
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return sigmas[l] < sigmas[r]; });
  double running = 0.0;
  for (std::size_t idx : order) {
    const InversionResult r = eval(sigmas[idx]);
    running = std::max(running, r.value);
    values[idx] = running;
    if (errors != nullptr) errors[idx] = r.error_estimate;
  }
}

}  // namespace

extern "C" {

const char* tt_last_error(void) { return g_last_error.c_str(); }
size_t tt_last_error_line(void) { return g_last_line; }
const char* tt_version(void) { return "0.1.0"; }

const char* tt_status_string(tt_status status) {
  switch (status) {
    case TT_OK: return "ok";
    case TT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TT_ERR_DOMAIN: return "domain error";
    case TT_ERR_INVALID_MODEL: return "invalid model";
    case TT_ERR_INPUT: return "input error";
    case TT_ERR_PARSE: return "parse error";
    case TT_ERR_CONVERGENCE: return "convergence failure";
    case TT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* tt_method_name(tt_pvalue_method method) {
  switch (method) {
    case TT_METHOD_GAMMA_CLOSED_FORM: return "gamma_closed_form";
    case TT_METHOD_INVERSION: return "inversion";
    case TT_METHOD_ASYMPTOTIC_SERIES: return "asymptotic_series";
    case TT_METHOD_ASYMPTOTIC_INTEGRAL: return "asymptotic_integral";
    case TT_METHOD_MONTE_CARLO: return "monte_carlo";
  }
  return "unknown";
}

unsigned tt_resolve_threads(unsigned requested) { return resolve_threads(requested); }

tt_status tt_model_parse(const char* spec, tt_model** out) {
  if (spec == nullptr || out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] { *out = new tt_model{parse_distribution(spec)}; });
}

tt_status tt_model_from_samples(const tt_sample* const* samples, size_t k, tt_model** out) {
  if (samples == nullptr || out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] {
    std::vector<Sample> list;
    for (size_t i = 0; i < k; ++i) {
      require(samples[i]);
      list.push_back(samples[i]->sample);
    }
    *out = new tt_model{std::make_shared<const AveragedEcdf>(list)};
  });
}

tt_status tt_model_cdf(const tt_model* model, double x, double* out) {
  if (model == nullptr || out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] { *out = model->model->cdf(x); });
}

tt_status tt_model_describe(const tt_model* model, char* buffer, size_t capacity) {
  if (model == nullptr || buffer == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  const std::string text = model->model->describe();
  if (text.size() + 1 > capacity) return fail(TT_ERR_INVALID_ARGUMENT, "buffer too small");
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return TT_OK;
}

void tt_model_free(tt_model* model) { delete model; }

tt_status tt_sample_from_array(const double* values, size_t count, tt_sample** out) {
  if ((values == nullptr && count > 0) || out == nullptr) {
    return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  return guard([&] { *out = new tt_sample{Sample(std::vector<double>(values, values + count))}; });
}

tt_status tt_sample_read(const char* path, const char* column, tt_sample** out) {
  if (path == nullptr || out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] {
    std::optional<std::string> col;
    if (column != nullptr) col = column;
    *out = new tt_sample{read_sample(path, col)};
  });
}

tt_status tt_sample_draw(const tt_model* model, size_t count, uint64_t seed, uint64_t stream, tt_sample** out) {
  if (model == nullptr || out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] {
    RandomStream rng(seed, stream);
    std::vector<double> values(count);
    for (auto& v : values) v = model->model->draw(rng);
    *out = new tt_sample{Sample(std::move(values))};
  });
}

size_t tt_sample_size(const tt_sample* sample) { return sample == nullptr ? 0 : sample->sample.size(); }
const double* tt_sample_data(const tt_sample* sample) {
  return sample == nullptr ? nullptr : sample->sample.values().data();
}
void tt_sample_free(tt_sample* sample) { delete sample; }

tt_status tt_file_digest(const char* path, char out[17]) {
  if (path == nullptr || out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] {
    const std::string d = file_digest(path);
    std::memcpy(out, d.c_str(), 17);
  });
}

tt_status tt_compute_statistic(const tt_sample* sample, const tt_model* model, double a, tt_side side,
                               double clamp_epsilon, tt_statistic* out) {
  if (sample == nullptr || model == nullptr || out == nullptr) {
    return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  return guard([&] {
    StatisticOptions opts;
    if (clamp_epsilon > 0.0) opts.clamp_epsilon = clamp_epsilon;
    const auto r = a_statistic(sample->sample, *model->model, a, to_cpp(side), opts);
    out->value = r.value;
    out->infinite = r.infinite ? 1 : 0;
    out->a = r.a;
    out->n = r.n;
    out->clamped_count = r.clamped_count;
  });
}

void tt_inversion_settings_default(tt_inversion_settings* out) {
  if (out == nullptr) return;
  const InversionSettings d;
  out->rel_tol = d.rel_tol;
  out->max_truncation = d.max_truncation;
  out->plain_truncation_limit = d.plain_truncation_limit;
  out->quadrature_order = d.quadrature_order;
  out->kernel = TT_KERNEL_AUTO;
}

tt_status tt_char_fn(double t, double a, int64_t n, double* re, double* im) {
  if (re == nullptr || im == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] {
    const auto v = char_fn(t, NullSpec(a, n));
    *re = v.real();
    *im = v.imag();
  });
}

tt_status tt_cumulant(int k, double a, int64_t n, double* out) {
  if (out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] { *out = cumulant(k, NullSpec(a, n)); });
}

tt_status tt_gamma_closed_form_cdf(double sigma, int64_t n, double* out) {
  if (out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] { *out = gamma_closed_form_cdf(sigma, n); });
}

tt_status tt_gamma_closed_form_pdf(double s, int64_t n, double* out) {
  if (out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] { *out = gamma_closed_form_pdf(s, n); });
}

tt_status tt_null_cdf(double sigma, double a, int64_t n, const tt_inversion_settings* settings,
                      tt_inversion_info* out) {
  if (out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] { to_c(null_cdf_detailed(sigma, NullSpec(a, n), to_cpp(settings)), out); });
}

tt_status tt_null_pdf(double s, double a, int64_t n, const tt_inversion_settings* settings,
                      tt_inversion_info* out) {
  if (out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] { to_c(null_pdf_detailed(s, NullSpec(a, n), to_cpp(settings)), out); });
}

tt_status tt_null_cdf_grid(const double* sigmas, size_t count, double a, int64_t n,
                           const tt_inversion_settings* settings, double* values, double* errors) {
  if ((sigmas == nullptr || values == nullptr) && count > 0) {
    return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  return guard([&] {
    const NullSpec spec(a, n);
    const auto s = to_cpp(settings);
    const auto cf = null_characteristic_function(spec);
    monotone_grid(sigmas, count, values, errors, [&](double x) {
      if (a == 1.0) {
        InversionResult r;
        r.value = gamma_closed_form_cdf(x, n);
        return r;
      }
      return invert_cdf(cf, x, s);
    });
  });
}

tt_status tt_limit_cdf(double sigma, double alpha, const tt_inversion_settings* settings, tt_inversion_info* out) {
  if (out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] { to_c(limit_cdf_detailed(sigma, LimitSpec(alpha), to_cpp(settings)), out); });
}

tt_status tt_limit_pdf(double s, double alpha, const tt_inversion_settings* settings, tt_inversion_info* out) {
  if (out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] { to_c(limit_pdf_detailed(s, LimitSpec(alpha), to_cpp(settings)), out); });
}

tt_status tt_limit_cdf_grid(const double* sigmas, size_t count, double alpha, const tt_inversion_settings* settings,
                            double* values, double* errors) {
  if ((sigmas == nullptr || values == nullptr) && count > 0) {
    return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  return guard([&] {
    const auto s = to_cpp(settings);
    const auto cf = limit_characteristic_function(LimitSpec(alpha));
    monotone_grid(sigmas, count, values, errors, [&](double x) { return invert_cdf(cf, x, s); });
  });
}

tt_status tt_limit_cdf_series(double sigma, double alpha, double series_threshold, tt_series* out) {
  if (out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] {
    const auto r = limit_cdf_series(sigma, LimitSpec(alpha), series_threshold);
    out->y = r.y;
    out->leading = r.leading;
    out->second_order = r.second_order;
    out->value = r.value;
    out->error_indicator = r.error_indicator;
    out->below_threshold = r.below_threshold ? 1 : 0;
  });
}

tt_status tt_second_order_term(double y, double* out) {
  if (out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] { *out = second_order_term(y); });
}

void tt_mc_settings_default(tt_mc_settings* out) {
  if (out == nullptr) return;
  const McSettings d;
  out->replicates = d.replicates;
  out->seed = d.seed;
  out->chunk_size = d.chunk_size;
  out->threads = d.threads;
}

void tt_pvalue_policy_default(tt_pvalue_policy* out) {
  if (out == nullptr) return;
  const PValuePolicy d;
  out->method = TT_POLICY_AUTO;
  out->asymptotic_min_n = d.asymptotic_min_n;
  out->asymptotic_min_a = d.asymptotic_min_a;
  out->series_min_alpha = d.series_min_alpha;
  out->monte_carlo_fallback = d.monte_carlo_fallback ? 1 : 0;
  tt_inversion_settings_default(&out->inversion);
  tt_mc_settings_default(&out->monte_carlo);
}

tt_status tt_p_value(double a_value, int infinite, double a, int64_t n, const tt_pvalue_policy* policy,
                     tt_pvalue* out) {
  if (out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] { to_c(p_value(a_value, infinite != 0, NullSpec(a, n), to_cpp(policy)), out); });
}

tt_status tt_mc_sample_null(double a, int64_t n, const tt_mc_settings* settings, double* buffer, size_t capacity) {
  if (buffer == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] {
    const auto s = to_cpp(settings);
    if (capacity < s.replicates) throw InputError("buffer smaller than the replicate count");
    const auto values = sample_null(NullSpec(a, n), s);
    std::copy(values.begin(), values.end(), buffer);
  });
}

tt_status tt_mc_p_value(double a_value, double a, int64_t n, const tt_mc_settings* settings, tt_pvalue* out) {
  if (out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] { to_c(mc_p_value(a_value, NullSpec(a, n), to_cpp(settings)), out); });
}

tt_status tt_ks_two_sample(const tt_sample* a, const tt_sample* b, tt_ks* out) {
  if (a == nullptr || b == nullptr || out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] { to_c(with_p_value(smirnov_statistic(a->sample, b->sample)), out); });
}

tt_status tt_ks_one_sample(const tt_sample* sample, const tt_model* model, tt_ks* out) {
  if (sample == nullptr || model == nullptr || out == nullptr) {
    return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  return guard([&] { to_c(with_p_value(kolmogorov_statistic(sample->sample, *model->model)), out); });
}

tt_status tt_ks_p(double lambda, double* out) {
  if (out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] { *out = ks_p(lambda); });
}

tt_status tt_point_probability(double mu, double F, int64_t k, int64_t n, double* out) {
  if (out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] { *out = point_probability(mu, F, k, n); });
}

tt_status tt_gaussian_point_probability(double mu, double F, int64_t k, int64_t n, double* out) {
  if (out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] { *out = gaussian_point_probability(mu, F, k, n); });
}

tt_status tt_gaussian_density(double mu, double F, int64_t k, int64_t n, double* out) {
  if (out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] { *out = gaussian_density(mu, F, k, n); });
}

tt_status tt_dispersion(double F, int64_t k, int64_t n, double* out) {
  if (out == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] { *out = dispersion(F, k, n); });
}

tt_status tt_power_study(const tt_power_config* config, tt_power_row* rows, size_t capacity, size_t* row_count) {
  if (config == nullptr || row_count == nullptr) return fail(TT_ERR_INVALID_ARGUMENT, "null pointer argument");
  return guard([&] {
    require(config->null_model, config->alternative);
    if (config->exponent_count > 0) require(config->exponents);
    if (config->side_count > 0) require(config->sides);
    PowerStudyConfig c;
    c.null_model = config->null_model->model;
    c.alternative = config->alternative->model;
    c.n = config->n;
    c.exponents.assign(config->exponents, config->exponents + config->exponent_count);
    c.sides.clear();
    for (size_t i = 0; i < config->side_count; ++i) c.sides.push_back(to_cpp(config->sides[i]));
    c.replicates = config->replicates;
    c.seed = config->seed;
    c.threads = config->threads;
    c.level = config->level;
    c.include_ks = config->include_ks != 0;
    c.policy = to_cpp(&config->policy);
    const auto result = power_study(c);
    *row_count = result.size();
    if (rows == nullptr || capacity < result.size()) throw InputError("row buffer too small");
    for (size_t i = 0; i < result.size(); ++i) {
      tt_power_row& r = rows[i];
      std::memset(r.test, 0, sizeof r.test);
      std::strncpy(r.test, result[i].test.c_str(), sizeof r.test - 1);
      r.a = result[i].a;
      r.side = result[i].side == TailSide::Right ? TT_SIDE_RIGHT : TT_SIDE_LEFT;
      r.rejections = result[i].rejections;
      r.replicates = result[i].replicates;
      r.power = result[i].power;
      r.std_error = result[i].std_error;
    }
  });
}

}  // extern "C"
