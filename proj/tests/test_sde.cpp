#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "remlab/levy.hpp"
#include "remlab/rng.hpp"
#include "remlab/sde.hpp"
#include "remlab/stats.hpp"

using namespace remlab;

namespace {
Environment1D env_from_fn(double L, std::size_t n_side, double (*fn)(double)) {
  std::vector<double> v(2 * n_side + 1);
  const double h = L / static_cast<double>(n_side);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(-L + h * static_cast<double>(i));
  return Environment1D(L, std::move(v));
}
}  // namespace

TEST_CASE("scale function") {
  // w == 0: s(x) = x exactly
  const Environment1D z = Environment1D::zero(50.0);
  const ScaleTable tz = scale_function(z);
  CHECK(tz.s_at(13.25) == doctest::Approx(13.25).epsilon(1e-15));
  CHECK(tz.x_at(-7.5) == doctest::Approx(-7.5).epsilon(1e-12));

  // w(x) = x: s(x) = e^x - 1 within trapezoid error O(h^2)
  const Environment1D lin = env_from_fn(4.0, 4096, [](double x) { return x; });
  const ScaleTable tl = scale_function(lin);
  for (double x : {-3.0, -1.0, 0.5, 2.0}) {
    CHECK(tl.s_at(x) == doctest::Approx(std::exp(x) - 1.0).epsilon(1e-6));
  }

  // inverse contract on random points
  const Environment1D env = sample_brownian_2sided(5, 8.0, 1.0 / 128);
  const ScaleTable t = scale_function(env);
  RandomStream rs(6);
  for (int i = 0; i < 100; ++i) {
    const double x = (rs.uniform() - 0.5) * 15.9;
    CHECK(t.x_at(t.s_at(x)) == doctest::Approx(x).epsilon(1e-9));
  }
}

TEST_CASE("time change with zero potential is Brownian motion") {
  const Environment1D z = Environment1D::zero(200.0);
  const int trials = 10000;
  std::vector<double> x1(trials);
  for (int s = 0; s < trials; ++s) {
    const PathSample p = simulate_time_change(z, 2.0, 1.0, 1e-3, 100 + s, 1.0);
    x1[s] = p.states.back();
  }
  const MeanVar mv = mean_var(x1);
  CHECK(std::fabs(mv.mean) < 3.0 / std::sqrt(static_cast<double>(trials)));
  CHECK(mv.var == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("time-change clock is monotone with consistent inverse") {
  const Environment1D env = sample_brownian_2sided(44, 16.0, 1.0 / 256);
  std::vector<std::pair<double, double>> trace;
  TimeChangeOptions opts;
  opts.clock_trace = &trace;
  (void)simulate_time_change(env, 2.0, 0.5, 1e-3, 9, 0.05, opts);
  REQUIRE(trace.size() > 10);
  for (std::size_t i = 1; i < trace.size(); ++i) {
    CHECK(trace[i].first > trace[i - 1].first);
    CHECK(trace[i].second >= trace[i - 1].second);
  }
  // C^{-1}(C(v)) = v by monotone lookup on the trace
  for (std::size_t i = 1; i < trace.size(); i += trace.size() / 7) {
    const double c = trace[i].second;
    std::size_t lo = 0, hi = trace.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (trace[mid].second <= c ? lo : hi) = mid;
    }
    CHECK(std::fabs(trace[lo].first - trace[i].first) <= 1e-9 + 1e-3);
  }
}

TEST_CASE("q=3 path is a time reparametrization of the q=2 path") {
  const Environment1D env = sample_brownian_2sided(3, 8.0, 1.0 / 128);
  std::vector<double> d2, d3;
  TimeChangeOptions o2, o3;
  o2.driving_positions = &d2;
  o3.driving_positions = &d3;
  (void)simulate_time_change(env, 2.0, 0.2, 1e-3, 77, 0.01, o2);
  (void)simulate_time_change(env, 3.0, 0.2, 1e-3, 77, 0.01, o3);
  const std::size_t n = std::min(d2.size(), d3.size());
  REQUIRE(n > 50);
  for (std::size_t i = 0; i < n; ++i) CHECK(d2[i] == d3[i]);  // identical visited sites
}

TEST_CASE("euler on an OU-type potential reaches the stationary variance") {
  // w(x) = x^2/2 gives drift -x/2 and stationary variance 1
  Environment1D ou = env_from_fn(12.0, 2048, [](double x) { return 0.5 * x * x; });
  ou.mollify_bandwidth = 0.1;  // analytic potential; smoothness scale O(1)
  const int trials = 10000;
  std::vector<double> xT(trials);
  for (int s = 0; s < trials; ++s) {
    const PathSample p = simulate_euler(ou, 50.0, 1e-3, 50000 + s, 50.0);
    xT[s] = p.states.back();
  }
  const MeanVar mv = mean_var(xT);
  CHECK(mv.var == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("euler dt halving stability and step validation") {
  Environment1D z(100.0, std::vector<double>(2001, 0.0));
  z.mollify_bandwidth = 1.0;
  const int trials = 4000;
  std::vector<double> a(trials), b(trials);
  for (int s = 0; s < trials; ++s) {
    a[s] = std::fabs(simulate_euler(z, 1.0, 2e-3, 7000 + s, 1.0).states.back());
    b[s] = std::fabs(simulate_euler(z, 1.0, 1e-3, 90000 + s, 1.0).states.back());
  }
  const MeanVar ma = mean_var(a), mb = mean_var(b);
  const double se = std::sqrt(ma.var / trials + mb.var / trials);
  CHECK(std::fabs(ma.mean - mb.mean) < 2.0 * se);
  // Brownian moment: E|X(1)| = sqrt(2/pi)
  CHECK(std::fabs(mb.mean - std::sqrt(2.0 / M_PI)) <
        3.0 * std::sqrt(mb.var / trials));

  Environment1D rough = sample_brownian_2sided(1, 4.0, 1.0 / 256);
  CHECK_THROWS_AS((void)simulate_euler(rough, 1.0, 1e-3, 1, 1.0), std::invalid_argument);
  Environment1D sm = mollify(rough, 8.0 / 256.0);
  CHECK_THROWS_AS((void)simulate_euler(sm, 1.0, 1.0, 1, 1.0), std::invalid_argument);
}

TEST_CASE("mollify") {
  const Environment1D z(4.0, std::vector<double>(513, 0.0));
  const Environment1D mz = mollify(z, 0.5);
  for (std::size_t i = 0; i < mz.size(); ++i) CHECK(mz.node_w(i) == 0.0);

  // affine functions pass through away from the boundary
  const Environment1D lin = env_from_fn(4.0, 512, [](double x) { return 3.0 * x; });
  const Environment1D ml = mollify(lin, 0.125);
  for (double x : {-2.0, -0.5, 0.25, 1.5})
    CHECK(ml.at(x) == doctest::Approx(3.0 * x).epsilon(1e-6));

  // smoothing distance is bounded by the modulus of continuity at the
  // bandwidth scale (empirical, generous constant)
  const Environment1D env = sample_brownian_2sided(12, 4.0, 1.0 / 512);
  const double bw = 16.0 / 512.0;
  const Environment1D sm = mollify(env, bw);
  double mod = 0.0;
  const int win = static_cast<int>(4.0 * bw / env.step());
  for (std::size_t i = 0; i + static_cast<std::size_t>(win) < env.size(); ++i)
    mod = std::max(mod, std::fabs(env.node_w(i + static_cast<std::size_t>(win)) - env.node_w(i)));
  double dist = 0.0;
  for (std::size_t i = 0; i < env.size(); ++i)
    dist = std::max(dist, std::fabs(sm.node_w(i) - env.node_w(i)));
  CHECK(dist <= mod);
  CHECK(sm.mollify_bandwidth == bw);
}

TEST_CASE("time-change vs euler scheme agreement on a mollified environment") {
  const Environment1D rough = sample_brownian_2sided(2027, 16.0, 16.0 / 4096.0);
  Environment1D sm = mollify(rough, 6.0 * rough.step());
  const int trials = 4000;
  std::vector<double> a(trials), b(trials);
  for (int s = 0; s < trials; ++s) {
    a[s] = simulate_time_change(sm, 2.0, 1.0, 1e-4, 600000 + s, 1.0).states.back();
    b[s] = simulate_euler(sm, 1.0, 1e-4, 900000 + s, 1.0).states.back();
  }
  const KsResult ks = ks_two_sample(a, b);
  CHECK(ks.distance < 0.05);
}

TEST_CASE("scale walk agrees with the fixed-step time change in law") {
  const Environment1D rough = sample_brownian_2sided(31337, 16.0, 16.0 / 1024.0);
  const int trials = 4000;
  std::vector<double> a(trials), b(trials);
  const std::vector<double> record{1.0};
  for (int s = 0; s < trials; ++s) {
    a[s] = simulate_time_change(rough, 2.0, 1.0, 1e-4, 111000 + s, 1.0).states.back();
    b[s] = simulate_scale_walk(rough, 2.0, 222000 + s, record).states.back();
  }
  const KsResult ks = ks_two_sample(a, b);
  CHECK(ks.distance < 0.05);
}

TEST_CASE("product simulation") {
  // (BM, BM): |X(1)| has mean sqrt(pi/2)
  std::vector<ProductComponent> bm2(2);
  const int trials = 10000;
  std::vector<double> norms(trials);
  for (int s = 0; s < trials; ++s) {
    const PathSample p = simulate_product(bm2, 1.0, 0.01, 40000 + s);
    const double x = p.state(p.times.size() - 1, 0);
    const double y = p.state(p.times.size() - 1, 1);
    norms[s] = std::hypot(x, y);
  }
  const MeanVar mv = mean_var(norms);
  const double expect = std::sqrt(M_PI / 2.0);
  CHECK(std::fabs(mv.mean - expect) < 3.0 * std::sqrt(mv.var / trials));

  // (time-change on w==0, BM) first coordinate matches BM in law
  std::vector<double> tc(trials), bm(trials);
  auto zero_env = std::make_shared<Environment1D>(Environment1D::zero(100.0));
  std::vector<ProductComponent> mixed(2);
  mixed[0].kind = ProductComponent::Kind::TimeChange;
  mixed[0].env = zero_env;
  mixed[0].q = 2.0;
  mixed[0].dt_clock = 1e-3;
  for (int s = 0; s < trials; ++s) {
    const PathSample p = simulate_product(mixed, 1.0, 0.05, 70000 + s);
    tc[s] = p.state(p.times.size() - 1, 0);
    const PathSample pb = simulate_product(bm2, 1.0, 0.05, 70000 + s);
    bm[s] = pb.state(pb.times.size() - 1, 0);
  }
  CHECK(ks_two_sample(tc, bm).distance < 0.05);

  // independence: cross-correlation of increments around zero
  double acc = 0.0;
  int count = 0;
  for (int s = 0; s < 200; ++s) {
    const PathSample p = simulate_product(bm2, 1.0, 0.01, 12000 + s);
    for (std::size_t j = 1; j < p.times.size(); ++j) {
      acc += (p.state(j, 0) - p.state(j - 1, 0)) * (p.state(j, 1) - p.state(j - 1, 1));
      ++count;
    }
  }
  const double dt = 0.01;
  const double corr = acc / count / dt;  // increments have variance dt
  CHECK(std::fabs(corr) < 3.0 / std::sqrt(static_cast<double>(count)));

  // (Brox on a sampled environment, BM): runs to t_end or flags
  auto env = std::make_shared<Environment1D>(sample_brownian_2sided(5150, 32.0, 32.0 / 1024));
  std::vector<ProductComponent> brox_bm(2);
  brox_bm[0].kind = ProductComponent::Kind::TimeChange;
  brox_bm[0].env = env;
  brox_bm[0].q = 3.0;
  brox_bm[0].dt_clock = 1e-3;
  const PathSample p = simulate_product(brox_bm, 5.0, 0.1, 999);
  CHECK(p.times.back() == doctest::Approx(5.0));
  CHECK(p.dim == 2);
}

TEST_CASE("estimate_return orderings") {
  std::vector<ProductComponent> c1(1), c2(2), c3(3);
  const std::vector<double> s1{3.0}, s2{3.0, 0.0}, s3{3.0, 0.0, 0.0};
  const std::int64_t trials = 2000;
  const ReturnStats r1 = estimate_return(c1, s1, 1.0, 0.0, 200.0, 0.02, trials, 31);
  const ReturnStats r2 = estimate_return(c2, s2, 1.0, 0.0, 200.0, 0.02, trials, 32);
  const ReturnStats r3 = estimate_return(c3, s3, 1.0, 0.0, 200.0, 0.02, trials, 33);
  // 1D reflection oracle: P(hit |x|<=1 by T) ~ 2 Phi-bar(2/sqrt(T)) = 0.888
  CHECK(r1.frequency == doctest::Approx(0.888).epsilon(0.05));
  CHECK(r1.frequency > r3.frequency);
  CHECK(r2.frequency > r3.frequency);
  // first-return times live in (t0, T]
  for (double t : r2.first_return_times)
    if (!std::isnan(t)) {
      CHECK(t > 0.0);
      CHECK(t <= 200.0);
    }
  CHECK_THROWS_AS(
      (void)estimate_return(c2, s2, 1.0, 10.0, 5.0, 0.02, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(
      (void)estimate_return(c2, {0.5, 0.0}, 1.0, 0.0, 5.0, 0.02, 10, 1), std::invalid_argument);
}

TEST_CASE("slow movement study produces a BM slope near 1/2") {
  std::vector<double> t_grid;
  for (double e = 1.0; e <= 3.01; e += 0.25) t_grid.push_back(std::pow(10.0, e));
  const auto bm = slow_movement_study(
      [](std::uint64_t) { return Environment1D(400.0, std::vector<double>(1601, 0.0)); },
      10, 40, 2.0, t_grid, 5);
  CHECK(bm.fit.slope == doctest::Approx(0.5).epsilon(0.06));
  CHECK(bm.absorbed == 0);
}
