#include "remlab/conditions.hpp"

#include <algorithm>
#include <cmath>

#include "remlab/rng.hpp"

namespace remlab {

namespace {

EventEstimate finish(std::int64_t trials, std::int64_t successes, std::uint64_t seed,
                     std::string law) {
  EventEstimate e;
  e.trials = trials;
  e.successes = successes;
  e.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
  const WilsonInterval w = wilson99(successes, trials);
  e.wilson_lo = w.lo;
  e.wilson_hi = w.hi;
  e.seed = seed;
  e.law = std::move(law);
  return e;
}

EnvSampler law_sampler(const EnvironmentLaw& law, double extent) {
  const double step = extent / 1024.0;  // 2^-10 * extent
  return [law, extent, step](std::uint64_t trial_seed) {
    return sample_environment_1d(law, trial_seed, extent, step);
  };
}

// per-trial pair (wunder(1,r^2), wbar(1,r^2) - wunder(0,1))
void sample_pairs(const EnvSampler& sampler, double r, std::int64_t trials,
                  std::uint64_t seed, const ParallelPlan& plan, std::vector<double>& lo,
                  std::vector<double>& diff) {
  lo.assign(static_cast<std::size_t>(trials), 0.0);
  diff.assign(static_cast<std::size_t>(trials), 0.0);
  for_chunks(trials, plan, [&](std::int64_t b, std::int64_t e, std::int64_t) {
    for (std::int64_t t = b; t < e; ++t) {
      const Environment1D env =
          sampler(substream_seed(seed, static_cast<std::uint64_t>(t)));
      const Extrema outer = env.extrema(1.0, r * r);
      const Extrema ball = env.extrema(0.0, 1.0);
      lo[static_cast<std::size_t>(t)] = outer.wunder;
      diff[static_cast<std::size_t>(t)] = outer.wbar - ball.wunder;
    }
  });
}

}  // namespace

EventEstimate estimate_event_re1_with(const EnvSampler& sampler, const std::string& descriptor,
                                      double r, std::int64_t trials, std::uint64_t seed,
                                      const ParallelPlan& plan) {
  if (!(r > 1.0)) throw std::invalid_argument("estimate_event_re1: r must be > 1");
  if (trials < 1000) throw std::invalid_argument("estimate_event_re1: trials must be >= 1e3");
  std::vector<double> lo, diff;
  sample_pairs(sampler, r, trials, seed, plan, lo, diff);
  std::int64_t succ = 0;
  for (std::int64_t t = 0; t < trials; ++t)
    if (diff[static_cast<std::size_t>(t)] < 2.0 * lo[static_cast<std::size_t>(t)]) ++succ;
  return finish(trials, succ, seed, descriptor);
}

EventEstimate estimate_event_re1(const EnvironmentLaw& law, double r, std::int64_t trials,
                                 std::uint64_t seed, const ParallelPlan& plan) {
  law.validate();
  return estimate_event_re1_with(law_sampler(law, r * r), law.descriptor(), r, trials, seed,
                                 plan);
}

EventEstimate estimate_event_mainassump_with(const EnvSampler& sampler,
                                             const std::string& descriptor, double r, double a,
                                             double b, std::int64_t trials, std::uint64_t seed,
                                             const ParallelPlan& plan) {
  if (!(r > 1.0)) throw std::invalid_argument("estimate_event_mainassump: r must be > 1");
  if (!(a > 0.0) || !(b > a))
    throw std::invalid_argument("estimate_event_mainassump: need 0 < a < b");
  std::vector<double> lo, diff;
  sample_pairs(sampler, r, trials, seed, plan, lo, diff);
  std::int64_t succ = 0;
  for (std::int64_t t = 0; t < trials; ++t)
    if (lo[static_cast<std::size_t>(t)] > a && diff[static_cast<std::size_t>(t)] < b) ++succ;
  return finish(trials, succ, seed, descriptor);
}

EventEstimate estimate_event_mainassump(const EnvironmentLaw& law, double r, double a,
                                        double b, std::int64_t trials, std::uint64_t seed,
                                        const ParallelPlan& plan) {
  law.validate();
  return estimate_event_mainassump_with(law_sampler(law, r * r), law.descriptor(), r, a, b,
                                        trials, seed, plan);
}

CombinedSearch thm_recurrence_search(const EnvironmentLaw& law, double r, std::int64_t trials,
                                     std::uint64_t seed, const ParallelPlan& plan) {
  law.validate();
  CombinedSearch cs;
  const EnvSampler sampler = law_sampler(law, r * r);
  std::vector<double> lo, diff;
  sample_pairs(sampler, r, trials, seed, plan, lo, diff);

  std::int64_t succ = 0;
  for (std::int64_t t = 0; t < trials; ++t)
    if (diff[static_cast<std::size_t>(t)] < 2.0 * lo[static_cast<std::size_t>(t)]) ++succ;
  cs.re1 = finish(trials, succ, seed, law.descriptor());

  // rational grid a = j/20; b = 2a - a/10
  std::int64_t best_succ = -1;
  for (int j = 1; j <= 60; ++j) {
    const double a = static_cast<double>(j) / 20.0;
    const double b = 1.9 * a;
    std::int64_t s = 0;
    for (std::int64_t t = 0; t < trials; ++t)
      if (lo[static_cast<std::size_t>(t)] > a && diff[static_cast<std::size_t>(t)] < b) ++s;
    cs.grid.emplace_back(a, s);
    if (s > best_succ) {
      best_succ = s;
      cs.a_best = a;
      cs.best = finish(trials, s, seed, law.descriptor());
    }
  }
  cs.found = cs.best.wilson_lo > 0.0;
  return cs;
}

GaussCondition gauss_condition_integrals(const Kernel& kernel, double r,
                                         const QuadratureSpec& quad) {
  if (kernel.dim != 1)
    throw std::invalid_argument("gauss_condition_integrals: only 1D kernels supported");
  if (!(r > 1.0)) throw std::invalid_argument("gauss_condition_integrals: r must be > 1");
  const double r2 = r * r;
  // midpoint in y; kernels may have kinks, keep cells small
  const std::int64_t ny = std::max<std::int64_t>(
      4096, static_cast<std::int64_t>(std::ceil(2.0 * r2 * quad.resolved_cells_per_unit())));
  const double hy = 2.0 * r2 / static_cast<double>(ny);
  auto inner = [&](double x) {
    double s = 0.0;
    for (std::int64_t i = 0; i < ny; ++i) {
      const double y = -r2 + hy * (static_cast<double>(i) + 0.5);
      s += kernel(x, y);
    }
    return s * hy;
  };
  // mesh including the exact region endpoints on both signs
  auto scan = [&](double a, double b, bool want_sup) {
    const int nx = 512;
    double best = want_sup ? -std::numeric_limits<double>::infinity()
                           : std::numeric_limits<double>::infinity();
    for (int sgn : {-1, 1}) {
      for (int i = 0; i <= nx; ++i) {
        const double x = sgn * (a + (b - a) * static_cast<double>(i) / nx);
        const double v = inner(x);
        best = want_sup ? std::max(best, v) : std::min(best, v);
      }
    }
    return best;
  };
  GaussCondition g;
  g.sup_term = scan(1.0, r2, true);
  g.inf_inner = scan(0.0, 1.0, false);
  g.inf_annulus = scan(1.0, r2, false);
  g.holds = (g.sup_term - g.inf_inner) < 2.0 * g.inf_annulus;
  return g;
}

MixingDecay gauss_mixing_decay(const Kernel& kernel, double r, double alpha, int n_max,
                               double threshold) {
  if (kernel.dim != 1)
    throw std::invalid_argument("gauss_mixing_decay: only 1D kernels supported");
  MixingDecay md;
  md.threshold = threshold;
  const int mesh = 256;
  for (int n = 1; n <= n_max; ++n) {
    const double rn = std::pow(r, n);
    double sup = -std::numeric_limits<double>::infinity();
    for (int sx : {-1, 1}) {
      for (int sy : {-1, 1}) {
        for (int i = 0; i <= mesh; ++i) {
          const double x = sx * (1.0 + (r - 1.0) * static_cast<double>(i) / mesh);
          for (int j = 0; j <= mesh; ++j) {
            const double y = sy * (1.0 + (r - 1.0) * static_cast<double>(j) / mesh);
            sup = std::max(sup, kernel(rn * x, y));
          }
        }
      }
    }
    md.terms.push_back(std::pow(r, -alpha * n) * sup);
  }
  md.tail_below = !md.terms.empty() && md.terms.back() < threshold;
  md.nonincreasing_tail = true;
  for (std::size_t i = md.terms.size() / 2; i + 1 < md.terms.size(); ++i)
    md.nonincreasing_tail =
        md.nonincreasing_tail && md.terms[i + 1] <= md.terms[i] * (1.0 + 1e-12);
  md.verdict = md.tail_below && md.nonincreasing_tail;
  return md;
}

LevyEventEstimate estimate_levy_event(const LevyTriplet& triplet, double M, double a,
                                      std::int64_t trials, std::uint64_t seed,
                                      const ParallelPlan& plan) {
  triplet.validate();
  if (!(M > 0.0) || !(a > 0.0))
    throw std::invalid_argument("estimate_levy_event: need M > 0, a > 0");
  LevyEventEstimate out;
  const bool brownian_case =
      (triplet.is_pure_gaussian() && triplet.gaussian_var > 0.0) ||
      (triplet.has_stable && triplet.stable_index == 2.0);
  out.hypothesis_ok = brownian_case || triplet.positive_jumps_possible();
  const double step = 1.0 / 1024.0;
  const std::int64_t succ = parallel_count(trials, plan, [&](std::int64_t t) {
    const LevyEnvironment le = sample_levy_2sided(
        triplet, substream_seed(seed, static_cast<std::uint64_t>(t)), 1.0, step);
    const double lo = le.env.extrema(0.0, 1.0).wunder;
    if (!(lo > -M)) return false;
    return std::min(le.env.at(-1.0), le.env.at(1.0)) > a;
  });
  out.estimate = finish(trials, succ, seed, "levy");
  return out;
}

std::vector<std::pair<double, LevyEventEstimate>> levy_event_m_sweep(
    const LevyTriplet& triplet, double a, std::int64_t trials, std::uint64_t seed,
    const ParallelPlan& plan) {
  std::vector<std::pair<double, LevyEventEstimate>> out;
  for (double m : {1.0, 2.0, 4.0, 8.0})
    out.emplace_back(m, estimate_levy_event(triplet, m, a, trials, seed, plan));
  return out;
}

bool SubsequenceReport::all_relations_ok(double tol) const {
  for (const auto& e : entries) {
    if (!e.rel1 || !e.rel1_chain || !e.rel2) return false;
    if (!(e.rel3_gap <= tol)) return false;
  }
  return true;
}

SubsequenceReport select_subsequence(const PotentialPtr& env, double r, double alpha,
                                     double a, double b, int n_max) {
  if (!env) throw std::invalid_argument("select_subsequence: null environment");
  if (!(r > 1.0) || !(alpha > 0.0))
    throw std::invalid_argument("select_subsequence: need r > 1, alpha > 0");
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("select_subsequence: need a, b > 0");
  if (std::pow(r, n_max + 1) > env->extent() * (1.0 + 1e-12))
    throw std::out_of_range("select_subsequence: extent does not cover r^{n_max+1}");

  SubsequenceReport rep;
  rep.r = r;
  rep.alpha = alpha;
  rep.a = a;
  rep.b = b;
  rep.n_max = n_max;
  const double thr = std::pow(r, -alpha);
  for (int n = 1; n <= n_max; ++n) {
    const ScaledPotential view(env, r, alpha, n);
    const Extrema m_ann = view.extrema(1.0 / r, r);
    const Extrema m_out = view.extrema(1.0, r);
    const Extrema m_ball = view.extrema(0.0, 1.0);
    const double member_lo = m_ann.wunder;
    const double member_diff = m_out.wbar - m_ball.wunder;
    if (!(member_lo > a * thr) || !(member_diff < b * thr)) continue;

    SubsequenceEntry e;
    e.n = n;
    e.member_lo = member_lo;
    e.member_diff = member_diff;
    const double growth = std::pow(r, alpha * (n - 1));
    const Extrema wide = env->extrema(std::pow(r, n - 1), std::pow(r, n + 1));
    const Extrema step = env->extrema(std::pow(r, n - 1), std::pow(r, n));
    const Extrema outer = env->extrema(std::pow(r, n), std::pow(r, n + 1));
    const Extrema ball_n = env->extrema(0.0, std::pow(r, n));
    const Extrema ball_n1 = env->extrema(0.0, std::pow(r, n + 1));
    e.rel1_lhs = wide.wunder;
    e.rel1_rhs = a * growth;
    e.rel1 = e.rel1_lhs > e.rel1_rhs;
    e.rel1_chain = step.wunder >= wide.wunder - 1e-12;
    e.rel2_lhs = outer.wbar - ball_n.wunder;
    e.rel2_rhs = b * growth;
    e.rel2 = e.rel2_lhs < e.rel2_rhs;
    e.rel3_gap = std::fabs(ball_n.wunder - ball_n1.wunder);
    e.rel3 = e.rel3_gap <= 1e-9;
    rep.entries.push_back(e);
  }
  return rep;
}

SphereCondition check_sphere_condition(const ProductEnvironment& env, double a0,
                                       double theta, int mesh) {
  if (!(a0 > 0.0)) throw std::invalid_argument("check_sphere_condition: a0 must be > 0");
  if (!(theta >= 1.0)) throw std::invalid_argument("check_sphere_condition: theta must be >= 1");
  const int d = env.dim();
  if (d > 3) throw std::invalid_argument("check_sphere_condition: d <= 3 only");
  if (d >= 2 && mesh < 8)
    throw std::invalid_argument("check_sphere_condition: mesh must be >= 8");

  std::vector<std::vector<double>> dirs;
  if (d == 1) {
    dirs = {{1.0}, {-1.0}};
  } else if (d == 2) {
    for (int i = 0; i < mesh; ++i) {
      const double t = 2.0 * M_PI * static_cast<double>(i) / mesh;
      double c = std::cos(t), s = std::sin(t);
      // keep axis directions exact so the w(0) = 0 pinning is visible
      if (std::fabs(c) < 1e-15) c = 0.0;
      if (std::fabs(s) < 1e-15) s = 0.0;
      dirs.push_back({c, s});
    }
  } else {
    // Fibonacci sphere with mesh^2 points
    const int npts = mesh * mesh;
    const double ga = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < npts; ++i) {
      const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / npts;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double t = ga * i;
      dirs.push_back({rho * std::cos(t), rho * std::sin(t), z});
    }
  }

  SphereCondition sc;
  sc.infimum = std::numeric_limits<double>::infinity();
  std::vector<double> pt(static_cast<std::size_t>(d));
  for (const auto& dir : dirs) {
    for (int i = 0; i < d; ++i) pt[static_cast<std::size_t>(i)] = theta * dir[static_cast<std::size_t>(i)];
    const double v = env.eval(pt);
    if (v < sc.infimum) {
      sc.infimum = v;
      sc.arg_direction = dir;
    }
  }
  sc.holds = sc.infimum > a0;
  return sc;
}

}  // namespace remlab
