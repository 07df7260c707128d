#include "remlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace remlab {

Kernel brox_kernel() {
  Kernel k;
  k.name = "brox";
  k.dim = 1;
  k.k = [](std::span<const double> x, std::span<const double> y) {
    if (x[0] * y[0] <= 0.0) return 0.0;
    return std::min(std::fabs(x[0]), std::fabs(y[0]));
  };
  return k;
}

Kernel zero_kernel(int dim) {
  Kernel k;
  k.name = "zero";
  k.dim = dim;
  k.k = [](std::span<const double>, std::span<const double>) { return 0.0; };
  return k;
}

Kernel sheet_kernel() {
  Kernel k;
  k.name = "sheet";
  k.dim = 2;
  k.k = [](std::span<const double> x, std::span<const double> y) {
    double v = 1.0;
    for (int i = 0; i < 2; ++i) {
      if (x[i] * y[i] <= 0.0) return 0.0;
      v *= std::min(std::fabs(x[i]), std::fabs(y[i]));
    }
    return v;
  };
  return k;
}

namespace {

struct GridKernelData {
  std::vector<double> xs, ys;
  std::vector<double> k;  // row-major xs x ys

  double eval(double x, double y) const {
    auto loc = [](const std::vector<double>& ax, double v) {
      if (v < ax.front() || v > ax.back())
        throw std::out_of_range("grid kernel: query outside table");
      auto it = std::upper_bound(ax.begin(), ax.end(), v);
      std::size_t i = it == ax.begin() ? 0 : static_cast<std::size_t>(it - ax.begin() - 1);
      if (i >= ax.size() - 1) i = ax.size() - 2;
      return std::pair<std::size_t, double>{i, (v - ax[i]) / (ax[i + 1] - ax[i])};
    };
    auto [i, tx] = loc(xs, x);
    auto [j, ty] = loc(ys, y);
    const std::size_t ny = ys.size();
    const double v00 = k[i * ny + j], v01 = k[i * ny + j + 1];
    const double v10 = k[(i + 1) * ny + j], v11 = k[(i + 1) * ny + j + 1];
    return (1 - tx) * ((1 - ty) * v00 + ty * v01) + tx * ((1 - ty) * v10 + ty * v11);
  }
};

}  // namespace

Kernel grid_kernel_from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("grid kernel: cannot open " + path);
  std::string line;
  std::vector<double> xs, ys;
  std::vector<std::tuple<double, double, double>> rows;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && line.find_first_not_of("xyK, \t") == std::string::npos) {
      first = false;
      continue;  // header
    }
    first = false;
    std::istringstream ss(line);
    double x, y, v;
    char c;
    if (!(ss >> x >> c >> y >> c >> v))
      throw std::invalid_argument("grid kernel: bad row: " + line);
    rows.emplace_back(x, y, v);
    xs.push_back(x);
    ys.push_back(y);
  }
  auto uniq = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  uniq(xs);
  uniq(ys);
  auto data = std::make_shared<GridKernelData>();
  data->xs = xs;
  data->ys = ys;
  data->k.assign(xs.size() * ys.size(),
                 std::numeric_limits<double>::quiet_NaN());
  for (auto& [x, y, v] : rows) {
    const std::size_t i =
        static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
    const std::size_t j =
        static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin());
    data->k[i * ys.size() + j] = v;
  }
  for (double v : data->k)
    if (std::isnan(v))
      throw std::invalid_argument("grid kernel: table is not a full tensor grid");
  Kernel k;
  k.name = "grid:" + path;
  k.dim = 1;
  k.k = [data](std::span<const double> x, std::span<const double> y) {
    return data->eval(x[0], y[0]);
  };
  return k;
}

Kernel lookup_kernel(const std::string& id) {
  if (id == "brox") return brox_kernel();
  if (id == "zero") return zero_kernel(1);
  if (id == "sheet") return sheet_kernel();
  if (id.find(".csv") != std::string::npos) return grid_kernel_from_csv(id);
  throw std::invalid_argument("unknown kernel id: " + id);
}

}  // namespace remlab
