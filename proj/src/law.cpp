#include "remlab/law.hpp"

#include <cmath>
#include <sstream>

#include "remlab/gaussian_field.hpp"
#include "remlab/kernels.hpp"
#include "remlab/rng.hpp"

namespace remlab {

void EnvironmentLaw::validate() const {
  if (!(r > 1.0)) throw std::invalid_argument("EnvironmentLaw: r must be > 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("EnvironmentLaw: alpha must be > 0");
  switch (kind) {
    case Kind::LevyTwoSided:
      triplet.validate();
      if (!(levy_exponent > 0.0) || levy_exponent > 2.0)
        throw std::invalid_argument("EnvironmentLaw: levy exponent must be in (0,2]");
      break;
    case Kind::Product:
      if (factors.empty())
        throw std::invalid_argument("EnvironmentLaw: product law needs factors");
      for (const auto& f : factors) f.validate();
      break;
    case Kind::Deterministic:
      if (shape != "zero" && shape != "abs" && shape != "linear")
        throw std::invalid_argument("EnvironmentLaw: unknown deterministic shape " + shape);
      break;
    default:
      break;
  }
}

std::string EnvironmentLaw::descriptor() const {
  std::ostringstream ss;
  switch (kind) {
    case Kind::BrownianTwoSided:
      ss << "brownian";
      break;
    case Kind::GaussianKernel:
      ss << "gaussian:" << kernel_id;
      break;
    case Kind::LevyTwoSided:
      ss << "levy(alpha_i=" << levy_exponent << ")";
      break;
    case Kind::Product:
      ss << "product[";
      for (std::size_t i = 0; i < factors.size(); ++i)
        ss << (i ? "," : "") << factors[i].descriptor();
      ss << "]";
      break;
    case Kind::Deterministic:
      ss << "deterministic:" << shape;
      break;
  }
  return ss.str();
}

namespace {

Environment1D deterministic_shape(const std::string& shape, double extent, double step) {
  const std::size_t n_side = static_cast<std::size_t>(std::llround(extent / step));
  const double h = extent / static_cast<double>(n_side);
  std::vector<double> values(2 * n_side + 1, 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = -extent + h * static_cast<double>(i);
    if (shape == "abs")
      values[i] = std::fabs(x);
    else if (shape == "linear")
      values[i] = x;
  }
  return Environment1D(extent, std::move(values));
}

}  // namespace

Environment1D sample_environment_1d(const EnvironmentLaw& law, std::uint64_t seed,
                                    double extent, double step) {
  law.validate();
  switch (law.kind) {
    case EnvironmentLaw::Kind::BrownianTwoSided:
      return sample_brownian_2sided(seed, extent, step);
    case EnvironmentLaw::Kind::LevyTwoSided:
      return sample_levy_2sided(law.triplet, seed, extent, step).env;
    case EnvironmentLaw::Kind::Deterministic:
      return deterministic_shape(law.shape, extent, step);
    case EnvironmentLaw::Kind::GaussianKernel: {
      const Kernel k = lookup_kernel(law.kernel_id);
      if (k.dim != 1)
        throw std::invalid_argument("sample_environment_1d: kernel is not 1D");
      const std::size_t n_side = static_cast<std::size_t>(std::llround(extent / step));
      GridEnvironment g =
          sample_gaussian_field(k, {uniform_axis(extent, n_side)}, seed);
      return Environment1D(extent, std::vector<double>(g.values()));
    }
    case EnvironmentLaw::Kind::Product:
      throw std::invalid_argument("sample_environment_1d: product law is not 1D");
  }
  throw std::invalid_argument("sample_environment_1d: bad law");
}

PotentialPtr sample_environment(const EnvironmentLaw& law, std::uint64_t seed,
                                double extent, double step) {
  law.validate();
  if (law.kind == EnvironmentLaw::Kind::Product) {
    std::vector<Environment1D> comps;
    comps.reserve(law.factors.size());
    for (std::size_t i = 0; i < law.factors.size(); ++i)
      comps.push_back(sample_environment_1d(
          law.factors[i], substream_seed(seed, i + 1, 0xC0A7ull), extent, step));
    return std::make_shared<ProductEnvironment>(std::move(comps));
  }
  return std::make_shared<Environment1D>(sample_environment_1d(law, seed, extent, step));
}

}  // namespace remlab
