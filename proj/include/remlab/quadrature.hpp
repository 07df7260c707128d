#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

#include "remlab/bump.hpp"
#include "remlab/parallel.hpp"

namespace remlab {

// Quadrature policy for the bump integrals. Tensor midpoint for d <= 3;
// stratified Monte Carlo for d >= 4. cells_per_unit is measured per unit
// length in the original coordinates at the integration level, so the
// integral of u_n refines its scaled-coordinate grid by r^n and stays
// matched to the environment grid at every level.
struct QuadratureSpec {
  double cells_per_unit = 0.0;  // 0 = default 256
  std::int64_t mc_samples = 1'000'000;
  double tolerance = 1e-6;
  std::uint64_t mc_seed = 0x51AB5EEDull;
  ParallelPlan plan;

  double resolved_cells_per_unit() const {
    return cells_per_unit > 0.0 ? cells_per_unit : 256.0;
  }
};

// Resolution floor keeping the bump's transition zone resolved even at
// level 0 when r is close to 1.
inline double bump_level_scale(double r, int n) {
  const double rn = std::pow(r, n);
  const double zone_floor = 4.0 / (r - 1.0);
  return rn > zone_floor ? rn : zone_floor;
}

// Integrates f over the box [-r, r]^d (d <= 3, midpoint; d >= 4,
// stratified MC over the same box). level_scale multiplies the midpoint
// resolution; per-dimension caps keep the tensor grid tractable.
double integrate_box(const std::function<double(std::span<const double>)>& f, int d,
                     double r, const QuadratureSpec& quad, double level_scale = 1.0);

struct ProfileConstants {
  double c1 = 0.0;      // int_{|x|<=r} phi^2
  double c2 = 0.0;      // int_{1<=|x|<=r} |grad phi|^2
  double v_d = 0.0;     // unit ball volume
  double c_tilde = 0.0; // (2 v_d)^{-d/2} c1 c2^{d/2} r^{d(d+2)/2}
  double c1_err = 0.0;  // |change under doubled resolution|
  double c2_err = 0.0;
};

ProfileConstants profile_constants(const BumpProfile& profile, const QuadratureSpec& quad);

}  // namespace remlab
