#pragma once

#include <functional>
#include <span>
#include <string>

namespace remlab {

// Covariance kernel K(x, y) on R^d x R^d.
struct Kernel {
  std::string name;
  int dim = 1;
  std::function<double(std::span<const double>, std::span<const double>)> k;

  double operator()(double x, double y) const {
    return k(std::span<const double>(&x, 1), std::span<const double>(&y, 1));
  }
};

// Two-sided Brownian covariance (|x| ^ |y|) 1_{xy > 0}, d = 1.
Kernel brox_kernel();

Kernel zero_kernel(int dim = 1);

// Product of two Brownian factors (Brownian-sheet style), d = 2.
Kernel sheet_kernel();

// Tabulated 1D kernel from CSV rows `x,y,K` on a full tensor grid,
// bilinear in between.
Kernel grid_kernel_from_csv(const std::string& path);

// Registry lookup for the shipped names ("brox", "zero", "sheet") or a
// path to a kernel CSV.
Kernel lookup_kernel(const std::string& id);

}  // namespace remlab
