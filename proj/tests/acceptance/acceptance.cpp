// Acceptance suite: one line per criterion, PASS/FAIL, nonzero exit if
// any criterion fails. Run all criteria or a single one with
// --criterion N.
#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <sstream>

#include "remlab/conditions.hpp"
#include "remlab/dirichlet.hpp"
#include "remlab/io.hpp"
#include "remlab/law.hpp"
#include "remlab/sde.hpp"
#include "test_common.hpp"

using namespace remlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

QuadratureSpec quad_for(double r, double cells_per_zone) {
  QuadratureSpec q;
  q.cells_per_unit = cells_per_zone / (r - 1.0);
  return q;
}

std::vector<long> log_spaced_k(double lo_exp, double hi_exp, int count) {
  std::vector<long> ks;
  for (int i = 0; i < count; ++i) {
    const long k = std::lround(
        std::pow(10.0, lo_exp + (hi_exp - lo_exp) * static_cast<double>(i) / (count - 1)));
    if (ks.empty() || k != ks.back()) ks.push_back(k);
  }
  return ks;
}

EnvironmentLaw brownian_law(double r) {
  EnvironmentLaw law;
  law.kind = EnvironmentLaw::Kind::BrownianTwoSided;
  law.r = r;
  law.alpha = 0.5;
  return law;
}

// ---------------------------------------------------------------- 1
Outcome criterion1() {
  Outcome o;
  const Kernel brox = brox_kernel();
  const auto g = gauss_condition_integrals(brox, 1.5);
  const bool sup_ok = std::fabs(g.sup_term - 2.53125) / 2.53125 <= 1e-6;
  const bool inner_ok = std::fabs(g.inf_inner) <= 1e-6;
  const bool ann_ok = std::fabs(g.inf_annulus - 1.75) / 1.75 <= 1e-6;
  const auto g19 = gauss_condition_integrals(brox, 1.9);
  o.pass = sup_ok && inner_ok && ann_ok && g.holds && !g19.holds;
  std::ostringstream ss;
  ss << "r=1.5 -> (" << g.sup_term << ", " << g.inf_inner << ", " << g.inf_annulus
     << ", holds=" << g.holds << "); r=1.9 holds=" << g19.holds;
  o.detail = ss.str();
  return o;
}

// ---------------------------------------------------------------- 2
Outcome criterion2() {
  Outcome o;
  const double r = 2.0;
  const BumpProfile profile(r, 1);
  const QuadratureSpec quad = quad_for(r, 4096.0);
  const ProfileConstants pc = profile_constants(profile, quad);
  const ZeroPotential zero(1);

  bool ok = std::fabs(pc.c2 - 20.0 / 7.0) / (20.0 / 7.0) <= 1e-6;
  int bad_n = -1;
  for (int n = 0; n <= 8 && ok; ++n) {
    const double m = mass(zero, n, 1.0, profile, quad);
    const double e = energy(zero, n, 1.0, profile, quad);
    const double m_ref = testutil::exact_c1(r) * std::pow(2.0, n);
    const double e_ref = 0.5 * (20.0 / 7.0) * std::pow(2.0, -n);
    if (std::fabs(m - m_ref) / m_ref > 1e-6 || std::fabs(e - e_ref) / e_ref > 1e-6) {
      ok = false;
      bad_n = n;
    }
  }

  // index against the closed form across log-spaced k up to 1e6
  const auto table = energy_table(zero, 1.0, profile, quad, 12);
  const auto ks = log_spaced_k(0.0, 6.0, 121);
  int mismatches = 0;
  for (long k : ks) {
    const auto got = index_nk_from_table(table, k);
    const int want = testutil::closed_form_nk(k, pc.c1, pc.c2, r);
    if (!got || *got != want) ++mismatches;
  }
  o.pass = ok && mismatches == 0;
  std::ostringstream ss;
  ss << "C2=" << pc.c2 << " (20/7=" << 20.0 / 7.0 << "), mass/energy n<=8 "
     << (ok ? "ok" : ("bad at n=" + std::to_string(bad_n)).c_str()) << ", n(k) mismatches "
     << mismatches << "/" << ks.size();
  o.detail = ss.str();
  return o;
}

// ---------------------------------------------------------------- 3
Outcome criterion3() {
  Outcome o;
  const double r = 1.5;
  const int n_max = 8;
  const double extent = std::pow(r, n_max + 1);
  const double step = extent / 1024.0;
  const BumpProfile profile(r, 1);
  const QuadratureSpec quad = quad_for(r, 128.0);
  const auto ks = log_spaced_k(0.0, 3.0, 20);
  const std::uint64_t seed = 20250803;

  int violations = 0;
  long checked = 0;
  for (int e = 0; e < 100; ++e) {
    const Environment1D env = sample_brownian_2sided(
        substream_seed(seed, static_cast<std::uint64_t>(e)), extent, step);
    const EnergyReport rep = verify_bounds(env, ks, 1.0, profile, quad, n_max, 1e-4);
    violations += rep.violations;
    checked += static_cast<long>(rep.sandwiches.size()) * 5 +
               static_cast<long>(rep.lemmas.size());
  }
  // zero potential: corollary bound, strict; unbounded extent so the
  // horizon can exceed the sampled environments'
  const ZeroPotential zero(1);
  const EnergyReport zrep = verify_bounds(zero, ks, 1.0, profile, quad, 12, 1e-4);
  int cor35_bad = 0;
  for (const auto& l : zrep.lemmas)
    if (l.cor35.status != BoundVerdict::Status::Holds || l.cor35.rel_slack <= 0.0) ++cor35_bad;
  violations += zrep.violations + cor35_bad;

  o.pass = violations == 0;
  std::ostringstream ss;
  ss << "100 environments, " << ks.size() << " k values, ~" << checked
     << " instances, violations=" << violations;
  o.detail = ss.str();
  return o;
}

// ---------------------------------------------------------------- 4
Outcome criterion4() {
  Outcome o;
  const double r = 1.5, alpha = 0.5, a = 0.1, b = 3.0;
  const int n_max = 8;
  const double extent = std::pow(r, n_max + 1);
  const double step = extent / 1024.0;
  const std::uint64_t seed = 20250803;  // same environments as criterion 3

  int nonempty = 0;
  int relation_failures = 0;
  for (int e = 0; e < 100; ++e) {
    auto env = std::make_shared<Environment1D>(sample_brownian_2sided(
        substream_seed(seed, static_cast<std::uint64_t>(e)), extent, step));
    const SubsequenceReport rep = select_subsequence(env, r, alpha, a, b, n_max);
    if (!rep.entries.empty()) {
      ++nonempty;
      if (!rep.all_relations_ok(1e-9)) ++relation_failures;
    }
  }
  o.pass = relation_failures == 0 && nonempty >= 50;
  std::ostringstream ss;
  ss << "relations ok on all " << nonempty
     << " nonempty reports (tol 1e-9), relation_failures=" << relation_failures
     << ", nonempty=" << nonempty << "/100 (gate >=50)";
  o.detail = ss.str();
  return o;
}

// ---------------------------------------------------------------- 5
Outcome criterion5() {
  Outcome o;
  const EnvironmentLaw law = brownian_law(1.5);
  const auto re1 = estimate_event_re1(law, 1.5, 100000, 20250805);
  const auto cs = thm_recurrence_search(law, 1.5, 200000, 20250806);
  o.pass = re1.wilson_lo > 0.0 && cs.found;
  std::ostringstream ss;
  ss << "re1 successes=" << re1.successes << "/1e5 wilson_lo=" << re1.wilson_lo
     << "; search found=" << cs.found << " at a=" << cs.a_best
     << " (successes=" << cs.best.successes << "/2e5)";
  o.detail = ss.str();
  return o;
}

// ---------------------------------------------------------------- 6
Outcome criterion6() {
  Outcome o;
  LevyTriplet cp;
  cp.cp.push_back({1.0, {JumpDist::Kind::Constant, 2.0, 0.0}});
  const std::int64_t trials = 100000;
  const auto le = estimate_levy_event(cp, 1.0, 1.0, trials, 20250807);
  const double oracle = std::pow(1.0 - std::exp(-1.0), 2);
  const double se = std::sqrt(oracle * (1.0 - oracle) / static_cast<double>(trials));
  const double dev = std::fabs(le.estimate.p_hat - oracle);
  o.pass = le.hypothesis_ok && dev <= 3.0 * se;
  std::ostringstream ss;
  ss << "p_hat=" << le.estimate.p_hat << " oracle=" << oracle << " |dev|=" << dev
     << " (3se=" << 3.0 * se << ")";
  o.detail = ss.str();
  return o;
}

// ---------------------------------------------------------------- 7
Outcome criterion7() {
  Outcome o;
  const double r = 1.5;
  const int n_max = 12;
  const double extent = std::pow(r, n_max + 1);
  const double step = extent / 1024.0;
  const BumpProfile profile(r, 1);
  const QuadratureSpec quad = quad_for(r, 64.0);
  const std::vector<long> ks{1, 10, 100, 1000};
  const std::uint64_t seed = 20250808;

  int pass_count = 0, incomplete = 0;
  for (int e = 0; e < 100; ++e) {
    auto env = std::make_shared<Environment1D>(sample_brownian_2sided(
        substream_seed(seed, static_cast<std::uint64_t>(e)), extent, step));
    std::vector<ComponentSpec> comps;
    comps.push_back({env, 2.0, 1});                                // Brox weight
    comps.push_back({std::make_shared<ZeroPotential>(1), 1.0, 1}); // 1D BM
    const CriterionReport rep = product_criterion(comps, ks, profile, quad, n_max);
    if (!rep.complete) {
      ++incomplete;
      continue;
    }
    if (rep.tail_decreasing && rep.final_over_second <= 0.2) ++pass_count;
  }
  o.pass = pass_count >= 80;
  std::ostringstream ss;
  ss << "decreasing-from-k=10 and final<=0.2x: " << pass_count
     << "/100 (gate >=80), horizon-incomplete=" << incomplete;
  o.detail = ss.str();
  return o;
}

// ---------------------------------------------------------------- 8
Outcome criterion8() {
  Outcome o;
  const std::uint64_t seed = 20250809;
  const int n_envs = 10;
  const std::int64_t trials = 10000;
  ParallelPlan plan;

  double worst_ks = 0.0;
  for (int e = 0; e < n_envs; ++e) {
    const Environment1D rough = sample_brownian_2sided(
        substream_seed(seed, static_cast<std::uint64_t>(e)), 16.0, 16.0 / 4096.0);
    const Environment1D sm = mollify(rough, 6.0 * rough.step());
    std::vector<double> a(static_cast<std::size_t>(trials)),
        b(static_cast<std::size_t>(trials));
    for_chunks(trials, plan, [&](std::int64_t lo, std::int64_t hi, std::int64_t) {
      for (std::int64_t t = lo; t < hi; ++t) {
        a[static_cast<std::size_t>(t)] =
            simulate_time_change(sm, 2.0, 1.0, 1e-4,
                                 substream_seed(seed, 1000 + e, static_cast<std::uint64_t>(t)),
                                 1.0)
                .states.back();
        b[static_cast<std::size_t>(t)] =
            simulate_euler(sm, 1.0, 1e-4,
                           substream_seed(seed, 2000 + e, static_cast<std::uint64_t>(t)), 1.0)
                .states.back();
      }
    });
    worst_ks = std::max(worst_ks, ks_two_sample(a, b).distance);
  }

  // zero potential reproduces the Brownian variance within 5%
  std::vector<double> x1(static_cast<std::size_t>(trials));
  const Environment1D zero_env = Environment1D::zero(200.0);
  for_chunks(trials, plan, [&](std::int64_t lo, std::int64_t hi, std::int64_t) {
    for (std::int64_t t = lo; t < hi; ++t)
      x1[static_cast<std::size_t>(t)] =
          simulate_time_change(zero_env, 2.0, 1.0, 1e-4,
                               substream_seed(seed, 3000, static_cast<std::uint64_t>(t)), 1.0)
              .states.back();
  });
  const MeanVar mv = mean_var(x1);
  const bool var_ok = std::fabs(mv.var - 1.0) <= 0.05;

  o.pass = worst_ks < 0.05 && var_ok;
  std::ostringstream ss;
  ss << "worst KS over " << n_envs << " environments = " << worst_ks
     << " (<0.05); zero-potential Var X(1) = " << mv.var << " (within 5%)";
  o.detail = ss.str();
  return o;
}

// ---------------------------------------------------------------- 9
Outcome criterion9() {
  Outcome o;
  const std::int64_t trials = 10000;
  std::vector<ProductComponent> bm2(2), bm3(3);
  const ReturnStats r2 =
      estimate_return(bm2, {3.0, 0.0}, 1.0, 0.0, 200.0, 0.01, trials, 20250810);
  const ReturnStats r3 =
      estimate_return(bm3, {3.0, 0.0, 0.0}, 1.0, 0.0, 200.0, 0.01, trials, 20250811);
  const double hw2 = 0.5 * (r2.wilson_hi - r2.wilson_lo);
  const double hw3 = 0.5 * (r3.wilson_hi - r3.wilson_lo);
  const double hw = std::max(hw2, hw3);
  o.pass = r2.frequency > r3.frequency && (r2.frequency - r3.frequency) >= 5.0 * hw;
  std::ostringstream ss;
  ss << "2D freq=" << r2.frequency << " 3D freq=" << r3.frequency
     << " gap=" << r2.frequency - r3.frequency << " (>=5 half-widths = " << 5.0 * hw << ")";
  o.detail = ss.str();
  return o;
}

// ---------------------------------------------------------------- 10
Outcome criterion10() {
  Outcome o;
  std::vector<double> t_grid;
  for (double e = 2.0; e <= 4.001; e += 0.25) t_grid.push_back(std::pow(10.0, e));
  const std::uint64_t seed = 20250812;

  const auto brox = slow_movement_study(
      [](std::uint64_t s) { return sample_brownian_2sided(s, 96.0, 96.0 / 1024.0); }, 200, 50,
      3.0, t_grid, seed);
  const auto bm = slow_movement_study(
      [](std::uint64_t) {
        return Environment1D(1000.0, std::vector<double>(4001, 0.0));
      },
      200, 50, 2.0, t_grid, seed + 1);

  const double se = std::hypot(brox.fit.slope_stderr, bm.fit.slope_stderr);
  o.pass = brox.fit.slope < bm.fit.slope && (bm.fit.slope - brox.fit.slope) > 2.0 * se;
  std::ostringstream ss;
  ss << "slope(time-changed, random env)=" << brox.fit.slope << " slope(BM)=" << bm.fit.slope
     << " diff=" << bm.fit.slope - brox.fit.slope << " (2se=" << 2.0 * se
     << "), absorbed=" << brox.absorbed << "/" << brox.paths;
  o.detail = ss.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc + 1; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
  }
  Outcome (*criteria[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                             criterion6, criterion7, criterion8, criterion9, criterion10};
  int failures = 0;
  for (int i = 1; i <= 10; ++i) {
    if (only != 0 && i != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i - 1]();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%2d] %s  %s  (%.1fs)\n", i, out.pass ? "PASS" : "FAIL", out.detail.c_str(),
                secs);
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
