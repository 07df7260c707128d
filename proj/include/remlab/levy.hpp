#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "remlab/environment.hpp"
#include "remlab/rng.hpp"

namespace remlab {

// Jump-size distribution of one compound-Poisson stream.
struct JumpDist {
  enum class Kind { Constant, Exponential, Gaussian } kind = Kind::Constant;
  double a = 1.0;  // Constant: size; Exponential: mean (sign gives direction); Gaussian: mu
  double b = 0.0;  // Gaussian: sigma
  double sample(RandomStream& rs) const;
  bool positive_possible() const;
};

struct CompoundPoissonPart {
  double rate = 0.0;
  JumpDist jumps;
};

// Levy triplet in the artifact's split form: Gaussian coefficient, drift,
// and either a stable jump part or a list of compound-Poisson streams.
// epsilon in (0,1] and -1 split jump sizes into the three classes
// (>epsilon, [-1,epsilon], <-1).
struct LevyTriplet {
  double gaussian_var = 0.0;  // variance per unit length
  double drift = 0.0;
  bool has_stable = false;
  double stable_index = 2.0;     // in (0,2]
  double stable_skew = 0.0;      // in [-1,1]
  std::vector<CompoundPoissonPart> cp;
  double epsilon = 1.0;  // class-split threshold, in (0,1]

  void validate() const;
  bool positive_jumps_possible() const;
  bool is_pure_gaussian() const { return !has_stable && cp.empty(); }
};

// One recorded compound-Poisson jump with its class in the three-way
// size decomposition (1: >eps, 2: [-1,eps], 3: <-1).
struct JumpRecord {
  double position;  // signed x
  double size;
  int cls;
};

struct LevyEnvironment {
  Environment1D env;
  std::vector<JumpRecord> jumps;
};

// Standard stable draw S(alpha, beta), scale 1 (Chambers-Mallows-Stuck).
// alpha = 2 is exact N(0,1); alpha = 1 requires beta = 0.
double stable_standard(double alpha, double beta, RandomStream& rs);

// Two independent one-sided paths sampled exactly at the grid nodes;
// right-continuous convention is represented by node values, linear in
// between at grid resolution.
LevyEnvironment sample_levy_2sided(const LevyTriplet& triplet, std::uint64_t seed,
                                   double extent, double step);

Environment1D sample_brownian_2sided(std::uint64_t seed, double extent, double step);

}  // namespace remlab
