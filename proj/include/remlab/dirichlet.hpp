#pragma once

#include <optional>
#include <vector>

#include "remlab/environment.hpp"
#include "remlab/quadrature.hpp"

namespace remlab {

// int |u_n|^2 e^{-theta w} dx, computed in scaled coordinates over the
// bump support. For w == 0 this equals c1 * r^{dn} with the exact same
// cells as profile_constants.
double mass(const Potential& env, int n, double theta, const BumpProfile& profile,
            const QuadratureSpec& quad);

// (1/2) int |grad u_n|^2 e^{-theta w} dx; w == 0 gives (1/2) c2 r^{(d-2)n}.
double energy(const Potential& env, int n, double theta, const BumpProfile& profile,
              const QuadratureSpec& quad);

struct EnergyRow {
  int n = 0;
  double mass = 0.0;
  double energy = 0.0;
  double ratio = 0.0;  // energy / mass
};

// Rows n = 0..n_max (n = 0 is needed by the lemma applicability check).
std::vector<EnergyRow> energy_table(const Potential& env, double theta,
                                    const BumpProfile& profile, const QuadratureSpec& quad,
                                    int n_max);

// n(k) = inf{ n >= 1 : energy_n <= mass_n / k }, truncated at n_max.
// nullopt encodes NotFoundWithinHorizon.
std::optional<int> index_nk(const Potential& env, long k, double theta,
                            const BumpProfile& profile, const QuadratureSpec& quad,
                            int n_max);
std::optional<int> index_nk_from_table(const std::vector<EnergyRow>& table, long k);

// ell(k) for a given increasing subsequence {n_ell}; returns the 1-based
// position ell, truncated at the end of the subsequence.
std::optional<int> index_ellk(const Potential& env, const std::vector<int>& subsequence,
                              long k, double theta, const BumpProfile& profile,
                              const QuadratureSpec& quad);

struct BoundVerdict {
  enum class Status { Holds, Violated, Skipped };
  Status status = Status::Skipped;
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_slack = 0.0;  // (rhs - lhs) / max(|lhs|, |rhs|)
};

struct SandwichRow {
  int n = 0;
  BoundVerdict mass_lower, mass_upper;    // two-sided mass bounds
  BoundVerdict mass_ball;                 // ball volume bound, worst ell in 1..n
  BoundVerdict energy_lower, energy_upper;
};

struct LemmaRow {
  long k = 0;
  std::optional<int> n_of_k;
  BoundVerdict defining;  // energy_{n(k)} <= mass_{n(k)} / k
  BoundVerdict lemma33;
  BoundVerdict lemma34;
  BoundVerdict cor35;  // zero potential only
};

struct EnergyReport {
  double theta = 1.0;
  ProfileConstants constants;
  std::vector<EnergyRow> rows;
  std::vector<SandwichRow> sandwiches;
  std::vector<LemmaRow> lemmas;
  int violations = 0;  // verdicts with status Violated
};

// Evaluates the full deterministic bound suite for one environment.
// bound_tol is the permitted relative negative slack (quadrature error
// allowance); verdicts below -bound_tol are Violated.
EnergyReport verify_bounds(const Potential& env, const std::vector<long>& k_grid,
                           double theta, const BumpProfile& profile,
                           const QuadratureSpec& quad, int n_max,
                           double bound_tol = 1e-4);

struct ComponentSpec {
  PotentialPtr env;
  double theta = 1.0;
  int dim = 1;
};

struct CriterionRow {
  long k = 0;
  std::vector<std::optional<int>> n_i;
  double raw = 0.0;     // (1/k) prod_i mass_i(n_i(k))
  double scaled = 0.0;  // (N/k) prod_i mass_i(n_i(k))
  bool complete = false;
};

struct CriterionReport {
  std::vector<CriterionRow> rows;
  bool tail_decreasing = false;      // strictly decreasing from the 2nd row on
  double final_over_second = 0.0;    // last raw / second raw
  bool complete = false;             // all rows complete
};

CriterionReport product_criterion(const std::vector<ComponentSpec>& components,
                                  const std::vector<long>& k_grid,
                                  const BumpProfile& profile, const QuadratureSpec& quad,
                                  int n_max);

}  // namespace remlab
