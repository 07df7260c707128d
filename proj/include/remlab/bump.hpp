#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace remlab {

// Radial cutoff: phi = 1 on |x| <= 1, 0 on |x| >= r, with the C2 quintic
// smoothstep across the transition zone. The scaled family is
// u_n(x) = phi(r^{-n} x).
struct BumpProfile {
  double r;  // outer cutoff ratio, > 1
  int dim;

  BumpProfile(double ratio, int d) : r(ratio), dim(d) {
    if (!(r > 1.0) || d < 1)
      throw std::invalid_argument("BumpProfile: need r > 1, dim >= 1");
  }

  // shape on [0,1]: psi(0)=1, psi(1)=0, psi'(0)=psi'(1)=0
  static double psi(double t) { return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t); }
  static double dpsi(double t) { return -30.0 * t * t * (1.0 - t) * (1.0 - t); }

  double value_radial(double rho) const {
    if (rho <= 1.0) return 1.0;
    if (rho >= r) return 0.0;
    return psi((rho - 1.0) / (r - 1.0));
  }

  // d(phi)/d(rho); zero outside the open transition annulus
  double dvalue_radial(double rho) const {
    if (rho <= 1.0 || rho >= r) return 0.0;
    return dpsi((rho - 1.0) / (r - 1.0)) / (r - 1.0);
  }

  double value(std::span<const double> x) const {
    double s = 0.0;
    for (double c : x) s += c * c;
    return value_radial(std::sqrt(s));
  }

  // gradient is radial: dvalue_radial(|x|) * x/|x|
  void gradient(std::span<const double> x, std::span<double> out) const {
    double s = 0.0;
    for (double c : x) s += c * c;
    const double rho = std::sqrt(s);
    const double g = dvalue_radial(rho);
    if (g == 0.0 || rho == 0.0) {
      for (auto& o : out) o = 0.0;
      return;
    }
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = g * x[i] / rho;
  }
};

double unit_ball_volume(int d);

}  // namespace remlab
