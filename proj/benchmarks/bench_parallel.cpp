// Timing comparison of the OpenMP kernels against the serial reference
// path. Not part of the test suite; run manually.
#include <chrono>
#include <cstdio>

#include "remlab/conditions.hpp"
#include "remlab/dirichlet.hpp"
#include "remlab/law.hpp"
#include "remlab/sde.hpp"

using namespace remlab;

namespace {

template <class Fn>
double time_s(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-32s serial %7.3fs   openmp %7.3fs   speedup %.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main() {
  EnvironmentLaw law;
  law.kind = EnvironmentLaw::Kind::BrownianTwoSided;
  ParallelPlan serial;
  serial.serial = true;
  ParallelPlan par;  // OpenMP default workers

  {
    volatile double sink = 0.0;
    auto run = [&](const ParallelPlan& plan) {
      const auto e = estimate_event_mainassump(law, 1.5, 0.05, 3.0, 40000, 1, plan);
      sink = sink + e.p_hat;
    };
    const double a = time_s([&] { run(serial); });
    const double b = time_s([&] { run(par); });
    report("event estimator (4e4 trials)", a, b);
  }

  {
    const BumpProfile p(1.5, 3);
    const ZeroPotential zero(3);
    QuadratureSpec qs;
    qs.cells_per_unit = 72.0;
    qs.plan = serial;
    QuadratureSpec qp = qs;
    qp.plan = par;
    volatile double sink = 0.0;
    const double a = time_s([&] { sink = sink + mass(zero, 2, 1.0, p, qs); });
    const double b = time_s([&] { sink = sink + mass(zero, 2, 1.0, p, qp); });
    report("3d tensor quadrature", a, b);
  }

  {
    std::vector<ProductComponent> bm2(2);
    auto run = [&](const ParallelPlan& plan) {
      (void)estimate_return(bm2, {3.0, 0.0}, 1.0, 0.0, 50.0, 0.01, 2000, 3, plan);
    };
    const double a = time_s([&] { run(serial); });
    const double b = time_s([&] { run(par); });
    report("return-statistics ensemble", a, b);
  }

  {
    std::vector<double> t_grid{10.0, 100.0, 1000.0};
    auto envs = [](std::uint64_t s) { return sample_brownian_2sided(s, 48.0, 48.0 / 1024.0); };
    const double a = time_s([&] { (void)slow_movement_study(envs, 20, 10, 3.0, t_grid, 5, serial); });
    const double b = time_s([&] { (void)slow_movement_study(envs, 20, 10, 3.0, t_grid, 5, par); });
    report("scale-walk ensemble", a, b);
  }

  return 0;
}
