#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "remlab/environment.hpp"
#include "remlab/levy.hpp"

namespace remlab {

// Distribution specification an environment is drawn from. The scaling
// ratio r and selfsimilarity exponent alpha ride along as metadata for
// the scaling map T. The Deterministic kind is a degenerate sampler for
// fixed test shapes.
struct EnvironmentLaw {
  enum class Kind {
    BrownianTwoSided,
    GaussianKernel,
    LevyTwoSided,
    Product,
    Deterministic,
  };
  Kind kind = Kind::BrownianTwoSided;
  double r = 1.5;
  double alpha = 0.5;

  std::string kernel_id;  // GaussianKernel
  LevyTriplet triplet;    // LevyTwoSided
  double levy_exponent = 2.0;
  std::vector<EnvironmentLaw> factors;  // Product
  std::string shape = "zero";          // Deterministic: zero | abs | linear

  void validate() const;
  std::string descriptor() const;
};

// Samples a realization on [-extent, extent] with the requested grid step.
PotentialPtr sample_environment(const EnvironmentLaw& law, std::uint64_t seed,
                                double extent, double step);

// 1D-only convenience used by the Monte Carlo event estimators.
Environment1D sample_environment_1d(const EnvironmentLaw& law, std::uint64_t seed,
                                    double extent, double step);

}  // namespace remlab
