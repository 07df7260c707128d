#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace remlab {

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct HorizonExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Extrema {
  double wbar = 0.0;    // sup over the annulus
  double wunder = 0.0;  // inf over the annulus
};

// A realized potential on R^d. Evaluation is defined on the box
// |x_i| <= extent(); extrema are over Euclidean annuli {a <= |x| <= b}.
class Potential {
 public:
  virtual ~Potential() = default;
  virtual int dim() const = 0;
  virtual double extent() const = 0;
  virtual double eval(std::span<const double> x) const = 0;
  virtual Extrema extrema(double a, double b) const = 0;
};

using PotentialPtr = std::shared_ptr<const Potential>;

// w == 0 with unbounded extent, exact in every query.
class ZeroPotential final : public Potential {
 public:
  explicit ZeroPotential(int d = 1) : d_(d) {}
  int dim() const override { return d_; }
  double extent() const override { return std::numeric_limits<double>::infinity(); }
  double eval(std::span<const double>) const override { return 0.0; }
  Extrema extrema(double, double) const override { return {0.0, 0.0}; }

 private:
  int d_;
};

// Uniform-grid sample of a 1D potential on [-L, L], piecewise linear in
// between, with w(0) stored as exactly 0.
class Environment1D final : public Potential {
 public:
  // values.size() must be odd; the middle node sits at x = 0.
  Environment1D(double extent, std::vector<double> values);

  static Environment1D zero(double extent) {
    return Environment1D(extent, std::vector<double>(3, 0.0));
  }

  int dim() const override { return 1; }
  double extent() const override { return extent_; }
  double step() const { return h_; }
  std::size_t size() const { return w_.size(); }
  double node_x(std::size_t i) const { return -extent_ + h_ * static_cast<double>(i); }
  double node_w(std::size_t i) const { return w_[i]; }
  const std::vector<double>& values() const { return w_; }

  double at(double x) const;
  double eval(std::span<const double> x) const override { return at(x[0]); }
  Extrema extrema(double a, double b) const override;

  // Present when the environment was smoothed; gates the Euler step size.
  double mollify_bandwidth = 0.0;

 private:
  double extent_;
  double h_;
  std::vector<double> w_;
};

// w(x) = sum_i w_i(x_i)
class ProductEnvironment final : public Potential {
 public:
  explicit ProductEnvironment(std::vector<Environment1D> components);
  int dim() const override { return static_cast<int>(components_.size()); }
  double extent() const override { return extent_; }
  double eval(std::span<const double> x) const override;
  Extrema extrema(double a, double b) const override;
  const std::vector<Environment1D>& components() const { return components_; }

 private:
  std::vector<Environment1D> components_;
  double extent_;
};

// Tensor-grid sample with multilinear interpolation, d <= 2.
class GridEnvironment final : public Potential {
 public:
  GridEnvironment(std::vector<std::vector<double>> axes, std::vector<double> values,
                  std::string kernel_id, std::uint64_t seed);
  int dim() const override { return static_cast<int>(axes_.size()); }
  double extent() const override { return extent_; }
  double eval(std::span<const double> x) const override;
  Extrema extrema(double a, double b) const override;
  const std::vector<std::vector<double>>& axes() const { return axes_; }
  const std::vector<double>& values() const { return values_; }
  const std::string& kernel_id() const { return kernel_id_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::vector<std::vector<double>> axes_;
  std::vector<double> values_;  // row-major over axes
  std::string kernel_id_;
  std::uint64_t seed_;
  double extent_;
};

// Lazy (T^n w)(x) = r^{-alpha n} w(r^n x). Extrema map exactly onto the
// base annulus, so scaled-view queries and raw-grid queries agree to
// rounding.
class ScaledPotential final : public Potential {
 public:
  ScaledPotential(PotentialPtr base, double r, double alpha, int n);
  int dim() const override { return base_->dim(); }
  double extent() const override { return base_->extent() / rn_; }
  double eval(std::span<const double> x) const override;
  Extrema extrema(double a, double b) const override;

 private:
  PotentialPtr base_;
  double r_, alpha_;
  int n_;
  double rn_;      // r^n
  double factor_;  // r^{-alpha n}
};

PotentialPtr scale_transform(PotentialPtr env, double r, double alpha, int n);

// Pointwise shift w + c. n(k) is invariant under this.
class ShiftedPotential final : public Potential {
 public:
  ShiftedPotential(PotentialPtr base, double c) : base_(std::move(base)), c_(c) {}
  int dim() const override { return base_->dim(); }
  double extent() const override { return base_->extent(); }
  double eval(std::span<const double> x) const override { return base_->eval(x) + c_; }
  Extrema extrema(double a, double b) const override {
    Extrema e = base_->extrema(a, b);
    return {e.wbar + c_, e.wunder + c_};
  }

 private:
  PotentialPtr base_;
  double c_;
};

}  // namespace remlab
