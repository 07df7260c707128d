#include "remlab/gaussian_field.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>

#include "remlab/rng.hpp"

namespace remlab {

std::vector<double> uniform_axis(double extent, std::size_t n_side) {
  std::vector<double> ax(2 * n_side + 1);
  const double h = extent / static_cast<double>(n_side);
  for (std::size_t i = 0; i < ax.size(); ++i)
    ax[i] = -extent + h * static_cast<double>(i);
  ax[n_side] = 0.0;
  return ax;
}

GridEnvironment sample_gaussian_field(const Kernel& kernel,
                                      const std::vector<std::vector<double>>& axes,
                                      std::uint64_t seed) {
  const int d = static_cast<int>(axes.size());
  if (d < 1 || d > 2) throw std::invalid_argument("sample_gaussian_field: d must be 1 or 2");
  if (kernel.dim != d) throw std::invalid_argument("sample_gaussian_field: kernel dim mismatch");

  std::vector<std::vector<double>> points;
  if (d == 1) {
    for (double x : axes[0]) points.push_back({x});
  } else {
    for (double x : axes[0])
      for (double y : axes[1]) points.push_back({x, y});
  }
  const std::size_t n = points.size();
  if (n > 20000)
    throw std::invalid_argument("sample_gaussian_field: grid too large for dense factorization");

  Eigen::MatrixXd K(n, n);
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = kernel.k(std::span<const double>(points[i].data(), points[i].size()),
                                std::span<const double>(points[j].data(), points[j].size()));
      K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      K(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
    max_diag = std::max(max_diag, K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
  }

  RandomStream rs = RandomStream::substream(seed, 0xF1E1Dull);
  Eigen::VectorXd z(n);
  for (std::size_t i = 0; i < n; ++i) z(static_cast<Eigen::Index>(i)) = rs.normal();

  Eigen::VectorXd w;
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() == Eigen::Success) {
    w = llt.matrixL() * z;
  } else {
    // pivoted fallback for semidefinite kernels; jitter only as a last resort
    auto try_ldlt = [&](double jitter, Eigen::VectorXd& out) {
      Eigen::MatrixXd Kj = K;
      if (jitter > 0.0)
        for (std::size_t i = 0; i < n; ++i)
          Kj(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += jitter;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(Kj);
      if (ldlt.info() != Eigen::Success) return false;
      Eigen::VectorXd dg = ldlt.vectorD();
      const double floor = -1e-8 * std::max(max_diag, 1.0);
      for (Eigen::Index i = 0; i < dg.size(); ++i) {
        if (dg(i) < floor)
          throw NumericalError("sample_gaussian_field: kernel not PSD on grid (tol 1e-8)");
        if (dg(i) < 0.0) dg(i) = 0.0;
      }
      Eigen::VectorXd y = dg.cwiseSqrt().asDiagonal() * z;
      y = ldlt.matrixL() * y;
      out = ldlt.transpositionsP().transpose() * y;
      return true;
    };
    if (!try_ldlt(0.0, w) && !try_ldlt(1e-12 * std::max(max_diag, 1.0), w))
      throw NumericalError("sample_gaussian_field: factorization failed");
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = w(static_cast<Eigen::Index>(i));
  // pin the origin node when it is on the grid
  for (std::size_t i = 0; i < n; ++i) {
    bool zero = true;
    for (double c : points[i]) zero = zero && c == 0.0;
    if (zero) values[i] = 0.0;
  }
  return GridEnvironment(axes, std::move(values), kernel.name, seed);
}

}  // namespace remlab
