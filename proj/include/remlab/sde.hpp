#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "remlab/environment.hpp"
#include "remlab/parallel.hpp"
#include "remlab/stats.hpp"

namespace remlab {

// s(x) = int_0^x e^{w(y)} dy on the environment grid (trapezoid), with
// monotone inverse. exp arguments are clamped at 700 and flagged.
struct ScaleTable {
  std::vector<double> x, s;
  bool clamped = false;

  double s_at(double xq) const;
  double x_at(double sq) const;
  double s_min() const { return s.front(); }
  double s_max() const { return s.back(); }
};
ScaleTable scale_function(const Environment1D& env);

struct PathSample {
  int dim = 1;
  std::vector<double> times;
  std::vector<double> states;  // row-major: states[j*dim + i]
  std::string scheme;
  std::uint64_t seed = 0;
  std::string env_descriptor;
  bool clock_exhausted = false;  // driving path left the scale image of [-L, L]
  bool extent_exit = false;
  bool step_budget_hit = false;

  double state(std::size_t j, int i = 0) const {
    return states[j * static_cast<std::size_t>(dim) + static_cast<std::size_t>(i)];
  }
};

struct TimeChangeOptions {
  double start_x = 0.0;
  std::int64_t max_steps = 2'000'000'000;
  std::vector<double>* driving_positions = nullptr;  // test hook
  std::vector<std::pair<double, double>>* clock_trace = nullptr;  // (v, C) pairs
};

// X(t) = s^{-1}(B(C^{-1}(t))) with clock C(v) = int_0^v e^{-q w(s^{-1}(B_u))} du.
// q = 2 is the diffusion itself, q = 3 its e^{-w} time change.
PathSample simulate_time_change(const Environment1D& env, double q, double t_end,
                                double dt_clock, std::uint64_t seed, double record_dt,
                                const TimeChangeOptions& opts = {});

// Euler-Maruyama on dX = -(1/2) w'(X) dt + dB for a mollified environment.
PathSample simulate_euler(const Environment1D& env, double t_end, double dt,
                          std::uint64_t seed, double record_dt, double start_x = 0.0);

// Gaussian smoothing on the same grid; w(0) re-pinned by a constant shift.
Environment1D mollify(const Environment1D& env, double bandwidth);

struct ProductComponent {
  enum class Kind { Brownian, TimeChange } kind = Kind::Brownian;
  std::shared_ptr<const Environment1D> env;  // TimeChange only
  double q = 2.0;
  double dt_clock = 1e-4;
  double start = 0.0;
};

PathSample simulate_product(const std::vector<ProductComponent>& components, double t_end,
                            double dt, std::uint64_t seed);

struct ReturnStats {
  std::int64_t trials = 0;
  std::int64_t returns = 0;
  double frequency = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  std::vector<double> first_return_times;  // NaN where no return
};

// Frequency of paths entering {|x| <= rho} during (t0, T].
ReturnStats estimate_return(const std::vector<ProductComponent>& components,
                            const std::vector<double>& start, double rho, double t0, double T,
                            double dt, std::int64_t trials, std::uint64_t seed,
                            const ParallelPlan& plan = {});

// Exact-exit-probability walk on the scale grid with mean holding-time
// clocks. Same scale/time-change representation as simulate_time_change,
// usable at horizons where a fixed driving step is not.
PathSample simulate_scale_walk(const Environment1D& env, double q, std::uint64_t seed,
                               const std::vector<double>& record_times, double start_x = 0.0,
                               std::int64_t max_steps = 500'000'000);

struct SlowMovementResult {
  LineFit fit;  // slope of log median|Y(t)| against log t
  std::vector<double> t_grid;
  std::vector<double> medians;
  std::int64_t paths = 0;
  std::int64_t absorbed = 0;
};

SlowMovementResult slow_movement_study(
    const std::function<Environment1D(std::uint64_t)>& env_of, int n_envs,
    int paths_per_env, double q, const std::vector<double>& t_grid, std::uint64_t seed,
    const ParallelPlan& plan = {});

}  // namespace remlab
