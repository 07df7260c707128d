#include "remlab/environment.hpp"

#include <algorithm>
#include <cmath>

namespace remlab {

Environment1D::Environment1D(double extent, std::vector<double> values)
    : extent_(extent), w_(std::move(values)) {
  if (!(extent > 0.0)) throw std::invalid_argument("Environment1D: extent must be positive");
  if (w_.size() < 3 || w_.size() % 2 == 0)
    throw std::invalid_argument("Environment1D: need an odd number (>=3) of nodes");
  h_ = 2.0 * extent_ / static_cast<double>(w_.size() - 1);
  w_[w_.size() / 2] = 0.0;  // Q(w(0)=0)=1
}

double Environment1D::at(double x) const {
  if (x < -extent_ || x > extent_)
    throw std::out_of_range("Environment1D: evaluation outside extent");
  const double u = (x + extent_) / h_;
  std::size_t i = static_cast<std::size_t>(u);
  if (i >= w_.size() - 1) i = w_.size() - 2;
  const double t = u - static_cast<double>(i);
  return w_[i] + t * (w_[i + 1] - w_[i]);
}

Extrema Environment1D::extrema(double a, double b) const {
  if (a < 0.0 || b <= a) throw std::invalid_argument("extrema: need 0 <= a < b");
  if (b > extent_ * (1.0 + 1e-12))
    throw std::out_of_range("extrema: annulus outside extent");
  b = std::min(b, extent_);
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  auto take = [&](double v) {
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  };
  // grid nodes inside the closed annulus, both signs
  const auto scan = [&](double left, double right) {
    const std::size_t i0 =
        static_cast<std::size_t>(std::max(0.0, std::ceil((left + extent_) / h_ - 1e-12)));
    const double iright = std::floor((right + extent_) / h_ + 1e-12);
    if (iright < 0) return;
    const std::size_t i1 =
        std::min(w_.size() - 1, static_cast<std::size_t>(iright));
    for (std::size_t i = i0; i <= i1; ++i) take(w_[i]);
  };
  if (a == 0.0) {
    scan(-b, b);  // the annulus degenerates to the full ball
  } else {
    scan(a, b);
    scan(-b, -a);
  }
  // annulus boundary points by interpolation
  take(at(std::min(b, extent_)));
  take(at(std::max(-b, -extent_)));
  if (a > 0.0) {
    take(at(a));
    take(at(-a));
  } else {
    take(0.0);  // x = 0 belongs to the ball and w(0) = 0
  }
  return {hi, lo};
}

ProductEnvironment::ProductEnvironment(std::vector<Environment1D> components)
    : components_(std::move(components)) {
  if (components_.empty())
    throw std::invalid_argument("ProductEnvironment: need at least one component");
  extent_ = std::numeric_limits<double>::infinity();
  for (const auto& c : components_) extent_ = std::min(extent_, c.extent());
}

double ProductEnvironment::eval(std::span<const double> x) const {
  if (x.size() != components_.size())
    throw std::invalid_argument("ProductEnvironment: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) s += components_[i].at(x[i]);
  return s;
}

Extrema ProductEnvironment::extrema(double a, double b) const {
  if (components_.size() == 1) return components_[0].extrema(a, b);
  if (components_.size() != 2)
    throw std::invalid_argument("ProductEnvironment::extrema: only d <= 2 supported");
  if (b > extent_ * (1.0 + 1e-12))
    throw std::out_of_range("extrema: annulus outside extent");
  // polar mesh scan; resolution tied to the finer component grid
  const double h = std::min(components_[0].step(), components_[1].step());
  const int nrad = std::max(64, static_cast<int>(std::ceil((b - a) / h)) + 1);
  const int nang = std::max(256, static_cast<int>(std::ceil(2.0 * M_PI * b / h)));
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (int ir = 0; ir <= nrad; ++ir) {
    const double rho = a + (b - a) * static_cast<double>(ir) / nrad;
    for (int ia = 0; ia < nang; ++ia) {
      const double th = 2.0 * M_PI * static_cast<double>(ia) / nang;
      const double v = components_[0].at(rho * std::cos(th)) +
                       components_[1].at(rho * std::sin(th));
      hi = std::max(hi, v);
      lo = std::min(lo, v);
    }
  }
  return {hi, lo};
}

GridEnvironment::GridEnvironment(std::vector<std::vector<double>> axes,
                                 std::vector<double> values, std::string kernel_id,
                                 std::uint64_t seed)
    : axes_(std::move(axes)),
      values_(std::move(values)),
      kernel_id_(std::move(kernel_id)),
      seed_(seed) {
  if (axes_.empty() || axes_.size() > 2)
    throw std::invalid_argument("GridEnvironment: d must be 1 or 2");
  std::size_t expect = 1;
  for (const auto& ax : axes_) {
    if (ax.size() < 2) throw std::invalid_argument("GridEnvironment: axis too short");
    for (std::size_t i = 1; i < ax.size(); ++i)
      if (!(ax[i] > ax[i - 1]))
        throw std::invalid_argument("GridEnvironment: axis not increasing");
    expect *= ax.size();
  }
  if (values_.size() != expect)
    throw std::invalid_argument("GridEnvironment: values/grid size mismatch");
  extent_ = std::numeric_limits<double>::infinity();
  for (const auto& ax : axes_)
    extent_ = std::min(extent_, std::min(-ax.front(), ax.back()));
}

namespace {
std::pair<std::size_t, double> locate(const std::vector<double>& ax, double x) {
  if (x < ax.front() || x > ax.back())
    throw std::out_of_range("GridEnvironment: evaluation outside extent");
  const auto it = std::upper_bound(ax.begin(), ax.end(), x);
  std::size_t i = it == ax.begin() ? 0 : static_cast<std::size_t>(it - ax.begin() - 1);
  if (i >= ax.size() - 1) i = ax.size() - 2;
  const double t = (x - ax[i]) / (ax[i + 1] - ax[i]);
  return {i, t};
}
}  // namespace

double GridEnvironment::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim())
    throw std::invalid_argument("GridEnvironment: dimension mismatch");
  if (dim() == 1) {
    auto [i, t] = locate(axes_[0], x[0]);
    return values_[i] + t * (values_[i + 1] - values_[i]);
  }
  auto [i, tx] = locate(axes_[0], x[0]);
  auto [j, ty] = locate(axes_[1], x[1]);
  const std::size_t ny = axes_[1].size();
  const double v00 = values_[i * ny + j];
  const double v01 = values_[i * ny + j + 1];
  const double v10 = values_[(i + 1) * ny + j];
  const double v11 = values_[(i + 1) * ny + j + 1];
  return (1 - tx) * ((1 - ty) * v00 + ty * v01) + tx * ((1 - ty) * v10 + ty * v11);
}

Extrema GridEnvironment::extrema(double a, double b) const {
  if (a < 0.0 || b <= a) throw std::invalid_argument("extrema: need 0 <= a < b");
  if (b > extent_ * (1.0 + 1e-12))
    throw std::out_of_range("extrema: annulus outside extent");
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  if (dim() == 1) {
    for (std::size_t i = 0; i < axes_[0].size(); ++i) {
      const double x = axes_[0][i];
      if (std::fabs(x) >= a && std::fabs(x) <= b) {
        hi = std::max(hi, values_[i]);
        lo = std::min(lo, values_[i]);
      }
    }
    for (double p : {a, -a, b, -b}) {
      if (std::fabs(p) <= extent_) {
        const double v = eval(std::span<const double>(&p, 1));
        hi = std::max(hi, v);
        lo = std::min(lo, v);
      }
    }
    return {hi, lo};
  }
  // d = 2: grid nodes in the annulus plus a polar boundary mesh
  const std::size_t ny = axes_[1].size();
  for (std::size_t i = 0; i < axes_[0].size(); ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const double rho = std::hypot(axes_[0][i], axes_[1][j]);
      if (rho >= a && rho <= b) {
        hi = std::max(hi, values_[i * ny + j]);
        lo = std::min(lo, values_[i * ny + j]);
      }
    }
  }
  const int nang = 512;
  for (double rho : {a, b}) {
    if (rho <= 0.0) continue;
    for (int ia = 0; ia < nang; ++ia) {
      const double th = 2.0 * M_PI * ia / nang;
      const double p[2] = {rho * std::cos(th), rho * std::sin(th)};
      const double v = eval(std::span<const double>(p, 2));
      hi = std::max(hi, v);
      lo = std::min(lo, v);
    }
  }
  if (a == 0.0) {
    const double p[2] = {0.0, 0.0};
    const double v = eval(std::span<const double>(p, 2));
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  return {hi, lo};
}

ScaledPotential::ScaledPotential(PotentialPtr base, double r, double alpha, int n)
    : base_(std::move(base)), r_(r), alpha_(alpha), n_(n) {
  if (!base_) throw std::invalid_argument("ScaledPotential: null base");
  if (!(r > 1.0) || !(alpha > 0.0) || n < 0)
    throw std::invalid_argument("ScaledPotential: need r > 1, alpha > 0, n >= 0");
  rn_ = std::pow(r_, n_);
  factor_ = std::pow(r_, -alpha_ * static_cast<double>(n_));
}

double ScaledPotential::eval(std::span<const double> x) const {
  double buf[8];
  const std::size_t d = x.size();
  if (d > 8) throw std::invalid_argument("ScaledPotential: dimension too large");
  for (std::size_t i = 0; i < d; ++i) buf[i] = rn_ * x[i];
  return factor_ * base_->eval(std::span<const double>(buf, d));
}

Extrema ScaledPotential::extrema(double a, double b) const {
  Extrema e = base_->extrema(rn_ * a, rn_ * b);
  return {factor_ * e.wbar, factor_ * e.wunder};
}

PotentialPtr scale_transform(PotentialPtr env, double r, double alpha, int n) {
  if (n == 0) return env;
  return std::make_shared<ScaledPotential>(std::move(env), r, alpha, n);
}

}  // namespace remlab
