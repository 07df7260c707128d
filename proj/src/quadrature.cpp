#include "remlab/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "remlab/environment.hpp"
#include "remlab/rng.hpp"

namespace remlab {

double unit_ball_volume(int d) {
  return std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

namespace {

double midpoint_box(const std::function<double(std::span<const double>)>& f, int d,
                    double r, double cells_per_unit, const ParallelPlan& plan) {
  const std::int64_t m =
      std::max<std::int64_t>(2, static_cast<std::int64_t>(std::ceil(2.0 * r * cells_per_unit)));
  const double h = 2.0 * r / static_cast<double>(m);
  std::int64_t total = 1;
  for (int k = 0; k < d; ++k) {
    if (total > (std::int64_t{1} << 40) / m)
      throw std::invalid_argument("integrate_box: midpoint grid too large");
    total *= m;
  }
  const double cellvol = std::pow(h, d);
  const double sum = parallel_sum(total, plan, [&](std::int64_t idx) {
    double x[3];
    std::int64_t rem = idx;
    for (int k = 0; k < d; ++k) {
      const std::int64_t i = rem % m;
      rem /= m;
      x[k] = -r + h * (static_cast<double>(i) + 0.5);
    }
    return f(std::span<const double>(x, static_cast<std::size_t>(d)));
  });
  return sum * cellvol;
}

}  // namespace

double integrate_box(const std::function<double(std::span<const double>)>& f, int d,
                     double r, const QuadratureSpec& quad, double level_scale) {
  if (d < 1 || d > 8) throw std::invalid_argument("integrate_box: bad dimension");
  if (d <= 3) {
    double cpu = quad.resolved_cells_per_unit() * std::max(1.0, level_scale);
    // per-dimension resolution caps for the tensor grid
    const double cap = d == 1 ? 2.0e6 / (2.0 * r) : (d == 2 ? 1536.0 : 176.0);
    cpu = std::min(cpu, cap);
    return midpoint_box(f, d, r, cpu, quad.plan);
  }
  // stratified MC: one jittered sample per stratum, repeated to reach
  // mc_samples, fixed substream per stratum for reproducibility
  if (quad.mc_samples < 10'000)
    throw std::invalid_argument("integrate_box: MC scheme needs >= 1e4 samples");
  const std::int64_t per_axis =
      std::max<std::int64_t>(2, static_cast<std::int64_t>(std::floor(
                                    std::pow(static_cast<double>(quad.mc_samples),
                                             1.0 / static_cast<double>(d)))));
  std::int64_t strata = 1;
  for (int k = 0; k < d; ++k) strata *= per_axis;
  const std::int64_t reps =
      std::max<std::int64_t>(1, quad.mc_samples / strata);
  const double h = 2.0 * r / static_cast<double>(per_axis);
  const double vol = std::pow(2.0 * r, d);
  const double sum = parallel_sum(strata, quad.plan, [&](std::int64_t s) {
    RandomStream rs = RandomStream::substream(quad.mc_seed, static_cast<std::uint64_t>(s));
    double acc = 0.0;
    double x[8];
    for (std::int64_t rep = 0; rep < reps; ++rep) {
      std::int64_t rem = s;
      for (int k = 0; k < d; ++k) {
        const std::int64_t i = rem % per_axis;
        rem /= per_axis;
        x[k] = -r + h * (static_cast<double>(i) + rs.uniform());
      }
      acc += f(std::span<const double>(x, static_cast<std::size_t>(d)));
    }
    return acc / static_cast<double>(reps);
  });
  return sum / static_cast<double>(strata) * vol;
}

ProfileConstants profile_constants(const BumpProfile& profile, const QuadratureSpec& quad) {
  ProfileConstants pc;
  pc.v_d = unit_ball_volume(profile.dim);
  auto phi2 = [&](std::span<const double> x) {
    const double v = profile.value(x);
    return v * v;
  };
  auto grad2 = [&](std::span<const double> x) {
    double s = 0.0;
    for (double c : x) s += c * c;
    const double g = profile.dvalue_radial(std::sqrt(s));
    return g * g;
  };
  const double scale = bump_level_scale(profile.r, 0);
  pc.c1 = integrate_box(phi2, profile.dim, profile.r, quad, scale);
  pc.c2 = integrate_box(grad2, profile.dim, profile.r, quad, scale);
  QuadratureSpec fine = quad;
  fine.cells_per_unit = 2.0 * quad.resolved_cells_per_unit();
  fine.mc_samples = 2 * quad.mc_samples;
  pc.c1_err = std::fabs(integrate_box(phi2, profile.dim, profile.r, fine, scale) - pc.c1);
  pc.c2_err = std::fabs(integrate_box(grad2, profile.dim, profile.r, fine, scale) - pc.c2);
  if (pc.c1 <= 0.0 || pc.c2 <= 0.0)
    throw NumericalError("profile_constants: degenerate constants");
  if (pc.c1_err > quad.tolerance * pc.c1 * 100.0 ||
      pc.c2_err > quad.tolerance * pc.c2 * 100.0)
    throw NumericalError("profile_constants: quadrature did not converge");
  pc.c_tilde = std::pow(2.0 * pc.v_d, -0.5 * profile.dim) * pc.c1 *
               std::pow(pc.c2, 0.5 * profile.dim) *
               std::pow(profile.r, 0.5 * profile.dim * (profile.dim + 2.0));
  return pc;
}

}  // namespace remlab
