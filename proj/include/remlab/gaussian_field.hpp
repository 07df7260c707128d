#pragma once

#include <cstdint>
#include <vector>

#include "remlab/environment.hpp"
#include "remlab/kernels.hpp"

namespace remlab {

// Exact Gaussian sample on a tensor grid via covariance factorization.
// Cholesky first; on failure, jitter 1e-12 and a pivoted LDLT with small
// negative pivots clamped. Kernels failing PSD beyond tolerance 1e-8
// raise NumericalError. All shipped kernels have K(0,.) = 0, which pins
// w(0) = 0; the node at the origin is stored as exactly 0.
GridEnvironment sample_gaussian_field(const Kernel& kernel,
                                      const std::vector<std::vector<double>>& axes,
                                      std::uint64_t seed);

// Convenience: symmetric uniform axis -L..L with 2n+1 nodes.
std::vector<double> uniform_axis(double extent, std::size_t n_side);

}  // namespace remlab
