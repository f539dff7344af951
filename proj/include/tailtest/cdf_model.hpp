#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tailtest/rng.hpp"

namespace tailtest {

// A theoretical CDF. Implementations must be side-effect free so a model can
// be shared between threads.
class CdfModel {
 public:
  virtual ~CdfModel() = default;

  virtual double cdf(double x) const = 0;
  // Generalized inverse: smallest x with cdf(x) >= u, for u in (0, 1).
  virtual double quantile(double u) const = 0;
  virtual double draw(RandomStream& rng) const { return quantile(rng.uniform()); }
  virtual std::string describe() const = 0;
};

using CdfModelPtr = std::shared_ptr<const CdfModel>;

class UniformModel final : public CdfModel {
 public:
  UniformModel(double lo, double hi);
  double cdf(double x) const override;
  double quantile(double u) const override;
  std::string describe() const override;

 private:
  double lo_, hi_;
};

class NormalModel final : public CdfModel {
 public:
  NormalModel(double mu, double sigma);
  double cdf(double x) const override;
  double quantile(double u) const override;
  std::string describe() const override;

 private:
  double mu_, sigma_;
};

class ExponentialModel final : public CdfModel {
 public:
  explicit ExponentialModel(double rate);
  double cdf(double x) const override;
  double quantile(double u) const override;
  std::string describe() const override;

 private:
  double rate_;
};

// Piecewise-linear interpolation between (x, F) knots; 0 below the first
// knot and 1 above the last one.
class TableModel final : public CdfModel {
 public:
  TableModel(std::vector<double> x, std::vector<double> f);
  double cdf(double x) const override;
  double quantile(double u) const override;
  std::string describe() const override;

  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& f() const noexcept { return f_; }

 private:
  std::vector<double> x_, f_;
};

// w * first + (1 - w) * second.
class MixtureModel final : public CdfModel {
 public:
  MixtureModel(double weight, CdfModelPtr first, CdfModelPtr second);
  double cdf(double x) const override;
  double quantile(double u) const override;
  double draw(RandomStream& rng) const override;
  std::string describe() const override;

 private:
  double weight_;
  CdfModelPtr first_, second_;
};

}  // namespace tailtest
