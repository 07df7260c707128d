#include "remlab/levy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace remlab {

double JumpDist::sample(RandomStream& rs) const {
  switch (kind) {
    case Kind::Constant:
      return a;
    case Kind::Exponential:
      return a * (-std::log(rs.uniform_pos()));
    case Kind::Gaussian:
      return a + b * rs.normal();
  }
  return a;
}

bool JumpDist::positive_possible() const {
  switch (kind) {
    case Kind::Constant:
      return a > 0.0;
    case Kind::Exponential:
      return a > 0.0;
    case Kind::Gaussian:
      return b > 0.0 || a > 0.0;
  }
  return false;
}

void LevyTriplet::validate() const {
  if (gaussian_var < 0.0) throw std::invalid_argument("LevyTriplet: gaussian_var < 0");
  if (has_stable) {
    if (!(stable_index > 0.0) || stable_index > 2.0)
      throw std::invalid_argument("LevyTriplet: stable index must be in (0,2]");
    if (stable_skew < -1.0 || stable_skew > 1.0)
      throw std::invalid_argument("LevyTriplet: skewness must be in [-1,1]");
    if (stable_index == 1.0 && stable_skew != 0.0)
      throw std::invalid_argument("LevyTriplet: alpha=1 supported only with zero skew");
  }
  for (const auto& p : cp)
    if (p.rate < 0.0) throw std::invalid_argument("LevyTriplet: negative rate");
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw std::invalid_argument("LevyTriplet: epsilon must be in (0,1]");
}

bool LevyTriplet::positive_jumps_possible() const {
  if (has_stable && stable_index < 2.0 && stable_skew > -1.0) return true;
  for (const auto& p : cp)
    if (p.rate > 0.0 && p.jumps.positive_possible()) return true;
  return false;
}

double stable_standard(double alpha, double beta, RandomStream& rs) {
  if (alpha == 2.0) return rs.normal();
  const double theta = M_PI * (rs.uniform() - 0.5);
  const double w = -std::log(rs.uniform_pos());
  if (alpha == 1.0) {
    // beta = 0 enforced by validate(): standard Cauchy
    return std::tan(theta);
  }
  const double theta0 = std::atan(beta * std::tan(M_PI_2 * alpha)) / alpha;
  const double s = std::pow(1.0 + beta * beta * std::pow(std::tan(M_PI_2 * alpha), 2),
                            1.0 / (2.0 * alpha));
  const double a = alpha * (theta + theta0);
  return s * std::sin(a) / std::pow(std::cos(theta), 1.0 / alpha) *
         std::pow(std::cos(theta - a) / w, (1.0 - alpha) / alpha);
}

namespace {

int jump_class(double size, double eps) {
  if (size > eps) return 1;
  if (size < -1.0) return 3;
  return 2;
}

// One-sided path at nodes t = step, 2*step, ..., n*step. out[i] = w(t_{i+1}).
void sample_one_side(const LevyTriplet& tr, RandomStream& rs, double step,
                     std::size_t n, double sign, std::vector<double>& out,
                     std::vector<JumpRecord>& jumps) {
  const double horizon = step * static_cast<double>(n);
  out.assign(n, 0.0);
  // Gaussian + stable node increments
  double acc = 0.0;
  std::vector<double> base(n, 0.0);
  const double gsd = std::sqrt(tr.gaussian_var * step);
  for (std::size_t i = 0; i < n; ++i) {
    double inc = tr.drift * step;
    if (tr.gaussian_var > 0.0) inc += gsd * rs.normal();
    if (tr.has_stable)
      inc += std::pow(step, 1.0 / tr.stable_index) *
             stable_standard(tr.stable_index, tr.stable_skew, rs);
    acc += inc;
    base[i] = acc;
  }
  // compound-Poisson streams, jump by jump
  std::vector<std::pair<double, double>> pts;  // (t, size)
  for (const auto& part : tr.cp) {
    if (part.rate <= 0.0) continue;
    double t = rs.exponential(part.rate);
    while (t <= horizon) {
      const double sz = part.jumps.sample(rs);
      pts.emplace_back(t, sz);
      t += rs.exponential(part.rate);
    }
  }
  std::sort(pts.begin(), pts.end());
  for (const auto& [t, sz] : pts)
    jumps.push_back({sign * t, sz, jump_class(sz, tr.epsilon)});
  std::size_t j = 0;
  double cpsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t_node = step * static_cast<double>(i + 1);
    while (j < pts.size() && pts[j].first <= t_node) cpsum += pts[j++].second;
    out[i] = base[i] + cpsum;
  }
}

}  // namespace

LevyEnvironment sample_levy_2sided(const LevyTriplet& triplet, std::uint64_t seed,
                                   double extent, double step) {
  triplet.validate();
  if (!(step > 0.0) || !(extent > step))
    throw std::invalid_argument("sample_levy_2sided: need 0 < step < extent");
  const std::size_t n_side = static_cast<std::size_t>(std::llround(extent / step));
  if (n_side > (std::size_t{1} << 28))
    throw std::invalid_argument("sample_levy_2sided: grid too large");
  const double h = extent / static_cast<double>(n_side);

  RandomStream rs_pos = RandomStream::substream(seed, 1);
  RandomStream rs_neg = RandomStream::substream(seed, 2);
  std::vector<JumpRecord> jumps;
  std::vector<double> side_pos, side_neg;
  sample_one_side(triplet, rs_pos, h, n_side, +1.0, side_pos, jumps);
  sample_one_side(triplet, rs_neg, h, n_side, -1.0, side_neg, jumps);

  std::vector<double> values(2 * n_side + 1, 0.0);
  for (std::size_t i = 0; i < n_side; ++i) {
    values[n_side + 1 + i] = side_pos[i];
    values[n_side - 1 - i] = side_neg[i];
  }
  LevyEnvironment out{Environment1D(extent, std::move(values)), std::move(jumps)};
  return out;
}

Environment1D sample_brownian_2sided(std::uint64_t seed, double extent, double step) {
  if (!(step > 0.0) || !(extent > step))
    throw std::invalid_argument("sample_brownian_2sided: need 0 < step < extent");
  const std::size_t n_side = static_cast<std::size_t>(std::llround(extent / step));
  if (n_side > (std::size_t{1} << 28))
    throw std::invalid_argument("sample_brownian_2sided: grid too large");
  const double h = extent / static_cast<double>(n_side);
  const double sd = std::sqrt(h);

  RandomStream rs_pos = RandomStream::substream(seed, 1);
  RandomStream rs_neg = RandomStream::substream(seed, 2);
  std::vector<double> values(2 * n_side + 1, 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < n_side; ++i) {
    acc += sd * rs_pos.normal();
    values[n_side + 1 + i] = acc;
  }
  acc = 0.0;
  for (std::size_t i = 0; i < n_side; ++i) {
    acc += sd * rs_neg.normal();
    values[n_side - 1 - i] = acc;
  }
  return Environment1D(extent, std::move(values));
}

}  // namespace remlab
