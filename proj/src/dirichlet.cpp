#include "remlab/dirichlet.hpp"

#include <algorithm>
#include <cmath>

namespace remlab {

namespace {

double pow_int(double r, int n) { return std::pow(r, static_cast<double>(n)); }

void check_support(const Potential& env, int n, const BumpProfile& profile) {
  if (env.dim() != profile.dim)
    throw std::invalid_argument("bump integral: dimension mismatch");
  const double need = pow_int(profile.r, n + 1);
  if (!(need <= env.extent() * (1.0 + 1e-12)))
    throw std::out_of_range("bump integral: support exceeds environment extent");
}

double weighted_integral(const Potential& env, int n, double theta,
                         const BumpProfile& profile, const QuadratureSpec& quad,
                         bool gradient) {
  const int d = profile.dim;
  const double rn = pow_int(profile.r, n);
  auto f = [&](std::span<const double> y) {
    double fac;
    if (gradient) {
      double s = 0.0;
      for (double c : y) s += c * c;
      const double g = profile.dvalue_radial(std::sqrt(s));
      if (g == 0.0) return 0.0;
      fac = g * g;
    } else {
      const double v = profile.value(y);
      if (v == 0.0) return 0.0;
      fac = v * v;
    }
    double x[8];
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = rn * y[i];
    const double w = env.eval(std::span<const double>(x, y.size()));
    return fac * std::exp(-theta * w);
  };
  const double v = integrate_box(f, d, profile.r, quad, bump_level_scale(profile.r, n));
  if (!std::isfinite(v)) throw NumericalError("bump integral: overflow");
  return v;
}

}  // namespace

double mass(const Potential& env, int n, double theta, const BumpProfile& profile,
            const QuadratureSpec& quad) {
  check_support(env, n, profile);
  return pow_int(profile.r, profile.dim * n) *
         weighted_integral(env, n, theta, profile, quad, false);
}

double energy(const Potential& env, int n, double theta, const BumpProfile& profile,
              const QuadratureSpec& quad) {
  check_support(env, n, profile);
  return 0.5 * pow_int(profile.r, (profile.dim - 2) * n) *
         weighted_integral(env, n, theta, profile, quad, true);
}

std::vector<EnergyRow> energy_table(const Potential& env, double theta,
                                    const BumpProfile& profile, const QuadratureSpec& quad,
                                    int n_max) {
  std::vector<EnergyRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    EnergyRow row;
    row.n = n;
    row.mass = mass(env, n, theta, profile, quad);
    row.energy = energy(env, n, theta, profile, quad);
    if (!(row.mass > 0.0)) throw NumericalError("energy_table: nonpositive mass");
    row.ratio = row.energy / row.mass;
    rows.push_back(row);
  }
  return rows;
}

std::optional<int> index_nk_from_table(const std::vector<EnergyRow>& table, long k) {
  if (k < 1) throw std::invalid_argument("index: k must be >= 1");
  for (const auto& row : table) {
    if (row.n == 0) continue;
    if (row.energy <= row.mass / static_cast<double>(k)) return row.n;
  }
  return std::nullopt;
}

std::optional<int> index_nk(const Potential& env, long k, double theta,
                            const BumpProfile& profile, const QuadratureSpec& quad,
                            int n_max) {
  if (k < 1) throw std::invalid_argument("index_nk: k must be >= 1");
  for (int n = 1; n <= n_max; ++n) {
    const double m = mass(env, n, theta, profile, quad);
    const double e = energy(env, n, theta, profile, quad);
    if (e <= m / static_cast<double>(k)) return n;
  }
  return std::nullopt;
}

std::optional<int> index_ellk(const Potential& env, const std::vector<int>& subsequence,
                              long k, double theta, const BumpProfile& profile,
                              const QuadratureSpec& quad) {
  if (subsequence.empty()) throw std::invalid_argument("index_ellk: empty subsequence");
  for (std::size_t i = 1; i < subsequence.size(); ++i)
    if (subsequence[i] <= subsequence[i - 1])
      throw std::invalid_argument("index_ellk: subsequence must be increasing");
  if (k < 1) throw std::invalid_argument("index_ellk: k must be >= 1");
  for (std::size_t i = 0; i < subsequence.size(); ++i) {
    const int n = subsequence[i];
    const double m = mass(env, n, theta, profile, quad);
    const double e = energy(env, n, theta, profile, quad);
    if (e <= m / static_cast<double>(k)) return static_cast<int>(i) + 1;
  }
  return std::nullopt;
}

namespace {

BoundVerdict one_sided(double lhs, double rhs, double tol) {
  // claim: lhs <= rhs
  BoundVerdict v;
  v.lhs = lhs;
  v.rhs = rhs;
  const double scale = std::max({std::fabs(lhs), std::fabs(rhs), 1e-300});
  v.rel_slack = (rhs - lhs) / scale;
  v.status = v.rel_slack >= -tol ? BoundVerdict::Status::Holds
                                 : BoundVerdict::Status::Violated;
  return v;
}

}  // namespace

EnergyReport verify_bounds(const Potential& env, const std::vector<long>& k_grid,
                           double theta, const BumpProfile& profile,
                           const QuadratureSpec& quad, int n_max, double bound_tol) {
  if (theta <= 0.0) throw std::invalid_argument("verify_bounds: theta must be > 0");
  EnergyReport rep;
  rep.theta = theta;
  rep.constants = profile_constants(profile, quad);
  rep.rows = energy_table(env, theta, profile, quad, n_max);

  const double r = profile.r;
  const int d = profile.dim;
  const double c1 = rep.constants.c1;
  const double c2 = rep.constants.c2;
  const double vd = rep.constants.v_d;

  auto ext = [&](double a, double b) { return env.extrema(a, b); };
  auto count = [&](const BoundVerdict& v) {
    if (v.status == BoundVerdict::Status::Violated) ++rep.violations;
  };

  for (int n = 1; n <= n_max; ++n) {
    SandwichRow row;
    row.n = n;
    const double mn = rep.rows[static_cast<std::size_t>(n)].mass;
    const double en = rep.rows[static_cast<std::size_t>(n)].energy;
    const Extrema ball = ext(0.0, pow_int(r, n + 1));
    row.mass_lower = one_sided(c1 * pow_int(r, d * n) * std::exp(-theta * ball.wbar), mn,
                               bound_tol);
    row.mass_upper = one_sided(mn, c1 * pow_int(r, d * n) * std::exp(-theta * ball.wunder),
                               bound_tol);
    // ball bound for every ell in 1..n; keep the worst
    BoundVerdict worst;
    for (int ell = 1; ell <= n; ++ell) {
      const Extrema inner = ext(0.0, pow_int(r, n - ell));
      const BoundVerdict v = one_sided(
          vd * pow_int(r, d * (n - ell)) * std::exp(-theta * inner.wbar), mn, bound_tol);
      if (worst.status == BoundVerdict::Status::Skipped || v.rel_slack < worst.rel_slack)
        worst = v;
    }
    row.mass_ball = worst;
    const Extrema ann = ext(pow_int(r, n), pow_int(r, n + 1));
    row.energy_lower = one_sided(
        c2 * pow_int(r, (d - 2) * n) * std::exp(-theta * ann.wbar), 2.0 * en, bound_tol);
    row.energy_upper = one_sided(
        2.0 * en, c2 * pow_int(r, (d - 2) * n) * std::exp(-theta * ann.wunder), bound_tol);
    count(row.mass_lower);
    count(row.mass_upper);
    count(row.mass_ball);
    count(row.energy_lower);
    count(row.energy_upper);
    rep.sandwiches.push_back(row);
  }

  const bool is_zero = dynamic_cast<const ZeroPotential*>(&env) != nullptr;
  for (long k : k_grid) {
    LemmaRow lr;
    lr.k = k;
    lr.n_of_k = index_nk_from_table(rep.rows, k);
    if (!lr.n_of_k) {
      rep.lemmas.push_back(lr);
      continue;
    }
    const int nk = *lr.n_of_k;
    const double mk = rep.rows[static_cast<std::size_t>(nk)].mass;
    const double ek = rep.rows[static_cast<std::size_t>(nk)].energy;
    lr.defining = one_sided(ek, mk / static_cast<double>(k), bound_tol);
    count(lr.defining);

    // The lemma33/lemma34 bounds need the defining inequality to fail at
    // level n(k)-1. For n(k) >= 2 that is the minimality of the index;
    // level 0 is outside the index range and must be checked explicitly.
    const double m0 = rep.rows[0].mass;
    const double e0 = rep.rows[0].energy;
    const bool applicable =
        ek > 0.0 && (nk >= 2 || m0 < static_cast<double>(k) * e0);
    if (applicable) {
      const double lo_step = ext(pow_int(r, nk - 1), pow_int(r, nk)).wunder;
      const double lo_wide = ext(pow_int(r, nk - 1), pow_int(r, nk + 1)).wunder;
      const double hi_unit = ext(0.0, 1.0).wbar;
      const double rhs33 =
          0.5 * c2 * static_cast<double>(k) * pow_int(r, (d - 2) * (nk - 1)) *
          std::exp(-theta * lo_step) *
          (1.0 + (pow_int(r, d) - 1.0) * pow_int(r, d * nk) *
                     std::exp(-theta * lo_wide) / std::exp(-theta * hi_unit));
      lr.lemma33 = one_sided(mk, rhs33, bound_tol);
      count(lr.lemma33);

      const double lo_ball = ext(0.0, pow_int(r, nk + 1)).wunder;
      const double hi_in = ext(0.0, pow_int(r, nk - 2)).wbar;
      const double rhs34 =
          rep.constants.c_tilde * std::pow(static_cast<double>(k), 0.5 * d) *
          std::exp(-theta * lo_ball - 0.5 * d * theta * lo_step +
                   0.5 * d * theta * hi_in);
      lr.lemma34 = one_sided(mk, rhs34, bound_tol);
      count(lr.lemma34);
    }

    if (is_zero) {
      lr.cor35 = one_sided(std::pow(static_cast<double>(k), -0.5 * d) * mk,
                           rep.constants.c_tilde, bound_tol);
      count(lr.cor35);
    }
    rep.lemmas.push_back(lr);
  }
  return rep;
}

CriterionReport product_criterion(const std::vector<ComponentSpec>& components,
                                  const std::vector<long>& k_grid,
                                  const BumpProfile& profile, const QuadratureSpec& quad,
                                  int n_max) {
  if (components.empty())
    throw std::invalid_argument("product_criterion: need at least one component");
  const double n_comp = static_cast<double>(components.size());

  // per-component tables up to the extent-limited horizon
  std::vector<std::vector<EnergyRow>> tables;
  std::vector<BumpProfile> profiles;
  for (const auto& c : components) {
    if (!c.env) throw std::invalid_argument("product_criterion: null component env");
    if (c.env->dim() != c.dim)
      throw std::invalid_argument("product_criterion: component dim mismatch");
    BumpProfile p(profile.r, c.dim);
    int cap = n_max;
    if (std::isfinite(c.env->extent()))
      cap = std::min(cap, static_cast<int>(std::floor(
                              std::log(c.env->extent()) / std::log(profile.r))) -
                              1);
    if (cap < 1) throw std::invalid_argument("product_criterion: component extent too small");
    tables.push_back(energy_table(*c.env, c.theta, p, quad, cap));
    profiles.push_back(p);
  }

  CriterionReport rep;
  for (long k : k_grid) {
    CriterionRow row;
    row.k = k;
    row.complete = true;
    double prod = 1.0;
    for (std::size_t i = 0; i < components.size(); ++i) {
      auto n_i = index_nk_from_table(tables[i], k);
      row.n_i.push_back(n_i);
      if (!n_i) {
        row.complete = false;
        continue;
      }
      prod *= tables[i][static_cast<std::size_t>(*n_i)].mass;
    }
    if (row.complete) {
      row.raw = prod / static_cast<double>(k);
      row.scaled = n_comp * row.raw;
    }
    rep.rows.push_back(row);
  }

  rep.complete = true;
  for (const auto& row : rep.rows) rep.complete = rep.complete && row.complete;
  if (rep.complete && rep.rows.size() >= 3) {
    rep.tail_decreasing = true;
    for (std::size_t i = 2; i < rep.rows.size(); ++i)
      rep.tail_decreasing = rep.tail_decreasing && rep.rows[i].raw < rep.rows[i - 1].raw;
    rep.final_over_second = rep.rows.back().raw / rep.rows[1].raw;
  }
  return rep;
}

}  // namespace remlab
