#pragma once

#include <cmath>
#include <functional>

// Shared independent oracles for the test suites. These deliberately avoid
// the library's quadrature and index machinery.

namespace testutil {

// exact rational values of the quintic-smoothstep integrals on [0,1]
inline constexpr double kIntPsiSquared = 181.0 / 462.0;   // int psi^2
inline constexpr double kIntDPsiSquared = 10.0 / 7.0;     // int psi'^2

// closed forms for d = 1 profiles
inline double exact_c1(double r) { return 2.0 * (1.0 + (r - 1.0) * kIntPsiSquared); }
inline double exact_c2(double r) { return 2.0 * kIntDPsiSquared / (r - 1.0); }

// zero-potential index closed form, d = 1
inline int closed_form_nk(long k, double c1, double c2, double r) {
  const double v = static_cast<double>(k) * c2 / (2.0 * c1);
  if (v <= 1.0) return 1;
  const int n = static_cast<int>(std::ceil(std::log(v) / std::log(r) / 2.0));
  return n < 1 ? 1 : n;
}

// adaptive Simpson, used as the high-resolution quadrature oracle
inline double simpson_rec(const std::function<double(double)>& f, double a, double b,
                          double fa, double fm, double fb, double whole, double tol,
                          int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace testutil
