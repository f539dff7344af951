#include "tailtest/cdf_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <boost/math/distributions/normal.hpp>

#include "tailtest/errors.hpp"

namespace tailtest {

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_index),
                    static_cast<std::uint32_t>(stream_index >> 32)};
  engine_.seed(seq);
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InputError(std::string(what) + " must be finite");
}

}  // namespace

UniformModel::UniformModel(double lo, double hi) : lo_(lo), hi_(hi) {
  require_finite(lo, "uniform lower bound");
  require_finite(hi, "uniform upper bound");
  if (!(lo < hi)) throw InputError("uniform(lo,hi) requires lo < hi");
}

double UniformModel::cdf(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  return (x - lo_) / (hi_ - lo_);
}

double UniformModel::quantile(double u) const { return lo_ + u * (hi_ - lo_); }

std::string UniformModel::describe() const {
  return "uniform(" + fmt(lo_) + "," + fmt(hi_) + ")";
}

NormalModel::NormalModel(double mu, double sigma) : mu_(mu), sigma_(sigma) {
  require_finite(mu, "normal mean");
  require_finite(sigma, "normal sigma");
  if (!(sigma > 0.0)) throw InputError("normal(mu,sigma) requires sigma > 0");
}

double NormalModel::cdf(double x) const {
  return 0.5 * std::erfc(-(x - mu_) / (sigma_ * std::sqrt(2.0)));
}

double NormalModel::quantile(double u) const {
  return boost::math::quantile(boost::math::normal_distribution<double>(mu_, sigma_), u);
}

std::string NormalModel::describe() const {
  return "normal(" + fmt(mu_) + "," + fmt(sigma_) + ")";
}

ExponentialModel::ExponentialModel(double rate) : rate_(rate) {
  require_finite(rate, "exponential rate");
  if (!(rate > 0.0)) throw InputError("exponential(rate) requires rate > 0");
}

double ExponentialModel::cdf(double x) const {
  return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x);
}

double ExponentialModel::quantile(double u) const { return -std::log1p(-u) / rate_; }

std::string ExponentialModel::describe() const { return "exponential(" + fmt(rate_) + ")"; }

TableModel::TableModel(std::vector<double> x, std::vector<double> f)
    : x_(std::move(x)), f_(std::move(f)) {
  if (x_.size() != f_.size()) throw InputError("table CDF: x and F columns differ in length");
  if (x_.empty()) throw InputError("table CDF: no knots");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    require_finite(x_[i], "table x");
    require_finite(f_[i], "table F");
    if (f_[i] < 0.0 || f_[i] > 1.0) throw InputError("table CDF: F outside [0,1]");
    if (i > 0 && !(x_[i] > x_[i - 1])) throw InputError("table CDF: x must be strictly increasing");
    if (i > 0 && f_[i] < f_[i - 1]) throw InputError("table CDF: F must be nondecreasing");
  }
}

double TableModel::cdf(double x) const {
  if (x < x_.front()) return 0.0;
  if (x > x_.back()) return 1.0;
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  if (it == x_.end()) return f_.back();
  const std::size_t hi = static_cast<std::size_t>(it - x_.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - x_[lo]) / (x_[hi] - x_[lo]);
  return f_[lo] + w * (f_[hi] - f_[lo]);
}

double TableModel::quantile(double u) const {
  if (u <= f_.front()) return x_.front();
  if (u > f_.back()) return x_.back();
  const auto it = std::lower_bound(f_.begin(), f_.end(), u);
  const std::size_t hi = static_cast<std::size_t>(it - f_.begin());
  const std::size_t lo = hi - 1;
  const double w = (u - f_[lo]) / (f_[hi] - f_[lo]);
  return x_[lo] + w * (x_[hi] - x_[lo]);
}

std::string TableModel::describe() const {
  return "table(" + std::to_string(x_.size()) + " knots)";
}

MixtureModel::MixtureModel(double weight, CdfModelPtr first, CdfModelPtr second)
    : weight_(weight), first_(std::move(first)), second_(std::move(second)) {
  if (!(weight >= 0.0 && weight <= 1.0)) throw InputError("mix weight must lie in [0,1]");
  if (!first_ || !second_) throw InputError("mix requires two component distributions");
}

double MixtureModel::cdf(double x) const {
  return weight_ * first_->cdf(x) + (1.0 - weight_) * second_->cdf(x);
}

double MixtureModel::quantile(double u) const {
  double lo = std::min(first_->quantile(u), second_->quantile(u));
  double hi = std::max(first_->quantile(u), second_->quantile(u));
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) >= u) hi = mid; else lo = mid;
  }
  return hi;
}

double MixtureModel::draw(RandomStream& rng) const {
  const double pick = rng.uniform();
  return pick < weight_ ? first_->draw(rng) : second_->draw(rng);
}

std::string MixtureModel::describe() const {
  return "mix(" + fmt(weight_) + "," + first_->describe() + "," + second_->describe() + ")";
}

}  // namespace tailtest
