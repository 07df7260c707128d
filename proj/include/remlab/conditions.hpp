#pragma once

#include <functional>
#include <string>
#include <vector>

#include "remlab/environment.hpp"
#include "remlab/kernels.hpp"
#include "remlab/law.hpp"
#include "remlab/parallel.hpp"
#include "remlab/quadrature.hpp"
#include "remlab/stats.hpp"

namespace remlab {

struct EventEstimate {
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double p_hat = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 1.0;
  std::uint64_t seed = 0;
  std::string law;
};

using EnvSampler = std::function<Environment1D(std::uint64_t trial_seed)>;

// Q( wbar(1, r^2) - wunder(0,1) < 2 wunder(1, r^2) ), Monte Carlo.
EventEstimate estimate_event_re1(const EnvironmentLaw& law, double r, std::int64_t trials,
                                 std::uint64_t seed, const ParallelPlan& plan = {});
EventEstimate estimate_event_re1_with(const EnvSampler& sampler, const std::string& descriptor,
                                      double r, std::int64_t trials, std::uint64_t seed,
                                      const ParallelPlan& plan = {});

// Q( wunder(1, r^2) > a, wbar(1, r^2) - wunder(0,1) < b ), 0 < a < b.
EventEstimate estimate_event_mainassump(const EnvironmentLaw& law, double r, double a, double b,
                                        std::int64_t trials, std::uint64_t seed,
                                        const ParallelPlan& plan = {});
EventEstimate estimate_event_mainassump_with(const EnvSampler& sampler,
                                             const std::string& descriptor, double r, double a,
                                             double b, std::int64_t trials, std::uint64_t seed,
                                             const ParallelPlan& plan = {});

// Combined search: one shared sample, a grid of rational a-candidates,
// b = 2a - a/10 each. found iff some candidate has a positive Wilson
// lower bound.
struct CombinedSearch {
  EventEstimate re1;
  bool found = false;
  double a_best = 0.0;
  EventEstimate best;
  std::vector<std::pair<double, std::int64_t>> grid;  // (a, successes)
};
CombinedSearch thm_recurrence_search(const EnvironmentLaw& law, double r, std::int64_t trials,
                                     std::uint64_t seed, const ParallelPlan& plan = {});

struct GaussCondition {
  double sup_term = 0.0;     // sup_{1<=|x|<=r^2} int_{|y|<=r^2} K(x,y) dy
  double inf_inner = 0.0;    // inf over |x|<=1
  double inf_annulus = 0.0;  // inf over 1<=|x|<=r^2
  bool holds = false;        // sup - inf_inner < 2 inf_annulus
};
GaussCondition gauss_condition_integrals(const Kernel& kernel, double r,
                                         const QuadratureSpec& quad = {});

struct MixingDecay {
  std::vector<double> terms;  // r^{-alpha n} sup_{x,y in D1} K(r^n x, y), n = 1..n_max
  bool tail_below = false;
  bool nonincreasing_tail = false;
  bool verdict = false;
  double threshold = 1e-3;
};
MixingDecay gauss_mixing_decay(const Kernel& kernel, double r, double alpha, int n_max,
                               double threshold = 1e-3);

struct LevyEventEstimate {
  EventEstimate estimate;
  bool hypothesis_ok = false;  // alpha_i = 2 or positive jumps possible
};
// Q( { wunder(0,1) > -M } cap { w(-1) ^ w(1) > a } )
LevyEventEstimate estimate_levy_event(const LevyTriplet& triplet, double M, double a,
                                      std::int64_t trials, std::uint64_t seed,
                                      const ParallelPlan& plan = {});

// The statement guarantees only that some M works; sweep a few.
std::vector<std::pair<double, LevyEventEstimate>> levy_event_m_sweep(
    const LevyTriplet& triplet, double a, std::int64_t trials, std::uint64_t seed,
    const ParallelPlan& plan = {});

struct SubsequenceEntry {
  int n = 0;
  // A-membership values measured on the scaled view T^n w
  double member_lo = 0.0;    // (T^n w)under(1/r, r)
  double member_diff = 0.0;  // (T^n w)bar(1, r) - (T^n w)under(0, 1)
  // the three relations, verified on the raw environment
  bool rel1 = false, rel1_chain = false, rel2 = false, rel3 = false;
  double rel1_lhs = 0.0, rel1_rhs = 0.0;
  double rel2_lhs = 0.0, rel2_rhs = 0.0;
  double rel3_gap = 0.0;  // |wunder(0,r^n) - wunder(0,r^{n+1})|
};

struct SubsequenceReport {
  double r = 0.0, alpha = 0.0, a = 0.0, b = 0.0;
  int n_max = 0;
  std::vector<SubsequenceEntry> entries;  // selected n's, increasing
  bool all_relations_ok(double tol = 1e-9) const;
};
SubsequenceReport select_subsequence(const PotentialPtr& env, double r, double alpha,
                                     double a, double b, int n_max);

struct SphereCondition {
  bool holds = false;
  double infimum = 0.0;
  std::vector<double> arg_direction;
};
SphereCondition check_sphere_condition(const ProductEnvironment& env, double a0,
                                       double theta, int mesh);

}  // namespace remlab
