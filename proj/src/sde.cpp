#include "remlab/sde.hpp"

#include <algorithm>
#include <cmath>

#include "remlab/rng.hpp"

namespace remlab {

namespace {
double clamp_exp(double arg, bool* clamped = nullptr) {
  if (arg > 700.0 || arg < -700.0) {
    if (clamped) *clamped = true;
    arg = std::clamp(arg, -700.0, 700.0);
  }
  return std::exp(arg);
}
}  // namespace

ScaleTable scale_function(const Environment1D& env) {
  ScaleTable t;
  const std::size_t n = env.size();
  t.x.resize(n);
  t.s.resize(n);
  std::vector<double> ew(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.x[i] = env.node_x(i);
    ew[i] = clamp_exp(env.node_w(i), &t.clamped);
  }
  const double h = env.step();
  t.s[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i)
    t.s[i] = t.s[i - 1] + 0.5 * h * (ew[i - 1] + ew[i]);
  const double s0 = t.s[n / 2];
  for (auto& v : t.s) v -= s0;  // s(0) = 0
  t.s[n / 2] = 0.0;
  for (std::size_t i = 1; i < n; ++i)
    if (!(t.s[i] > t.s[i - 1])) throw NumericalError("scale_function: table not increasing");
  return t;
}

double ScaleTable::s_at(double xq) const {
  if (xq < x.front() || xq > x.back())
    throw std::out_of_range("ScaleTable: x outside table");
  const double h = x[1] - x[0];
  std::size_t i = static_cast<std::size_t>((xq - x.front()) / h);
  if (i >= x.size() - 1) i = x.size() - 2;
  const double t = (xq - x[i]) / h;
  return s[i] + t * (s[i + 1] - s[i]);
}

double ScaleTable::x_at(double sq) const {
  if (sq < s.front() || sq > s.back())
    throw std::out_of_range("ScaleTable: s outside table");
  // monotone bisection on the node table, then linear within the cell
  std::size_t lo = 0, hi = s.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (s[mid] <= sq)
      lo = mid;
    else
      hi = mid;
  }
  const double t = (sq - s[lo]) / (s[hi] - s[lo]);
  return x[lo] + t * (x[hi] - x[lo]);
}

PathSample simulate_time_change(const Environment1D& env, double q, double t_end,
                                double dt_clock, std::uint64_t seed, double record_dt,
                                const TimeChangeOptions& opts) {
  if (q != 2.0 && q != 3.0)
    throw std::invalid_argument("simulate_time_change: q must be 2 (diffusion) or 3 (time change)");
  if (!(t_end > 0.0) || !(dt_clock > 0.0) || !(record_dt > 0.0))
    throw std::invalid_argument("simulate_time_change: need positive t_end, dt_clock, record_dt");
  if (std::fabs(opts.start_x) >= env.extent())
    throw std::out_of_range("simulate_time_change: start outside extent");

  const ScaleTable table = scale_function(env);
  PathSample p;
  p.dim = 1;
  p.scheme = "time-change";
  p.seed = seed;

  RandomStream rs(seed);
  const double sd = std::sqrt(dt_clock);
  double B = table.s_at(opts.start_x);
  double x = opts.start_x;
  double clock = 0.0;
  double v = 0.0;
  double next_t = record_dt;
  bool frozen = false;
  std::int64_t steps = 0;
  p.times.push_back(0.0);
  p.states.push_back(x);
  while (next_t <= t_end * (1.0 + 1e-12)) {
    if (!frozen) {
      if (++steps > opts.max_steps) {
        p.step_budget_hit = true;
        break;
      }
      v += dt_clock;
      B += sd * rs.normal();
      if (B <= table.s_min() || B >= table.s_max()) {
        B = std::clamp(B, table.s_min(), table.s_max());
        p.clock_exhausted = true;
        p.extent_exit = true;
        frozen = true;
      }
      x = table.x_at(B);
      if (opts.driving_positions) opts.driving_positions->push_back(x);
      clock += clamp_exp(-q * env.at(x)) * dt_clock;
      if (opts.clock_trace) opts.clock_trace->emplace_back(v, clock);
    } else {
      // absorbed: the path holds its boundary position at all later times
      while (next_t <= t_end * (1.0 + 1e-12)) {
        p.times.push_back(next_t);
        p.states.push_back(x);
        next_t += record_dt;
      }
      break;
    }
    while (next_t <= clock && next_t <= t_end * (1.0 + 1e-12)) {
      p.times.push_back(next_t);
      p.states.push_back(x);
      next_t += record_dt;
    }
  }
  return p;
}

PathSample simulate_euler(const Environment1D& env, double t_end, double dt,
                          std::uint64_t seed, double record_dt, double start_x) {
  if (!(env.mollify_bandwidth > 0.0))
    throw std::invalid_argument("simulate_euler: environment carries no mollified representation");
  if (dt > env.mollify_bandwidth * env.mollify_bandwidth)
    throw std::invalid_argument("simulate_euler: dt too large for the mollifier scale");
  if (!(t_end > 0.0) || !(dt > 0.0) || !(record_dt > 0.0))
    throw std::invalid_argument("simulate_euler: need positive t_end, dt, record_dt");

  const double L = env.extent();
  const double h = env.step();
  const double margin = std::min(h, 1e-3 * L);
  auto grad = [&](double xq) {
    const double xp = std::min(xq + h, L);
    const double xm = std::max(xq - h, -L);
    return (env.at(xp) - env.at(xm)) / (xp - xm);
  };

  PathSample p;
  p.dim = 1;
  p.scheme = "euler";
  p.seed = seed;
  RandomStream rs(seed);
  const double sd = std::sqrt(dt);
  double x = start_x;
  double t = 0.0;
  double next_t = record_dt;
  bool frozen = false;
  p.times.push_back(0.0);
  p.states.push_back(x);
  while (next_t <= t_end * (1.0 + 1e-12)) {
    if (!frozen) {
      x += -0.5 * grad(x) * dt + sd * rs.normal();
      if (std::fabs(x) >= L - margin) {
        x = std::clamp(x, -(L - margin), L - margin);
        p.extent_exit = true;
        frozen = true;
      }
    }
    t += dt;
    while (next_t <= t * (1.0 + 1e-12) && next_t <= t_end * (1.0 + 1e-12)) {
      p.times.push_back(next_t);
      p.states.push_back(x);
      next_t += record_dt;
    }
  }
  return p;
}

Environment1D mollify(const Environment1D& env, double bandwidth) {
  if (!(bandwidth >= 2.0 * env.step()))
    throw std::invalid_argument("mollify: bandwidth below grid resolution");
  const std::size_t n = env.size();
  const double h = env.step();
  const int half = static_cast<int>(std::ceil(4.0 * bandwidth / h));
  std::vector<double> kernel(static_cast<std::size_t>(2 * half + 1));
  for (int j = -half; j <= half; ++j) {
    const double u = static_cast<double>(j) * h / bandwidth;
    kernel[static_cast<std::size_t>(j + half)] = std::exp(-0.5 * u * u);
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0, wsum = 0.0;
    const int lo = std::max<int>(-half, -static_cast<int>(i));
    const int hi = std::min<int>(half, static_cast<int>(n - 1 - i));
    for (int j = lo; j <= hi; ++j) {
      const double kk = kernel[static_cast<std::size_t>(j + half)];
      acc += kk * env.node_w(i + static_cast<std::size_t>(j));
      wsum += kk;
    }
    out[i] = acc / wsum;
  }
  const double center = out[n / 2];
  for (auto& v : out) v -= center;
  Environment1D sm(env.extent(), std::move(out));
  sm.mollify_bandwidth = bandwidth;
  return sm;
}

namespace {

// Scale tables are built once per component, before any parallel trial
// loop; ComponentState construction must not throw inside workers.
struct PreparedComponent {
  ProductComponent c;
  std::shared_ptr<const ScaleTable> table;  // TimeChange only
};

std::vector<PreparedComponent> prepare_components(
    const std::vector<ProductComponent>& components) {
  std::vector<PreparedComponent> prepared;
  prepared.reserve(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) {
    PreparedComponent pc;
    pc.c = components[i];
    if (pc.c.kind == ProductComponent::Kind::TimeChange) {
      if (!pc.c.env)
        throw std::invalid_argument("product component " + std::to_string(i) +
                                    ": missing environment");
      if (!(pc.c.dt_clock > 0.0))
        throw std::invalid_argument("product component " + std::to_string(i) +
                                    ": dt_clock must be positive");
      try {
        pc.table = std::make_shared<ScaleTable>(scale_function(*pc.c.env));
      } catch (const std::exception& ex) {
        throw std::invalid_argument("product component " + std::to_string(i) + ": " +
                                    ex.what());
      }
    }
    prepared.push_back(std::move(pc));
  }
  return prepared;
}

// Per-trial component stepper sampled exactly at the shared clock times.
class ComponentState {
 public:
  ComponentState(const PreparedComponent& p, RandomStream rs, double start)
      : c_(p.c), table_(p.table.get()), rs_(std::move(rs)), x_(start) {
    if (c_.kind == ProductComponent::Kind::TimeChange) B_ = table_->s_at(start);
  }

  // advance from internal time to t, return position at t
  double advance_to(double t) {
    if (c_.kind == ProductComponent::Kind::Brownian) {
      const double gap = t - t_;
      if (gap > 0.0) x_ += std::sqrt(gap) * rs_.normal();
      t_ = t;
      return x_;
    }
    const double sd = std::sqrt(c_.dt_clock);
    while (clock_ < t && !frozen_) {
      B_ += sd * rs_.normal();
      if (B_ <= table_->s_min() || B_ >= table_->s_max()) {
        B_ = std::clamp(B_, table_->s_min(), table_->s_max());
        frozen_ = true;
        exited_ = true;
      }
      x_ = table_->x_at(B_);
      const double density = clamp_exp(-c_.q * c_.env->at(x_));
      clock_ += density * c_.dt_clock;
      if (frozen_) break;
    }
    if (frozen_) clock_ = t;  // absorbed paths hold their position
    t_ = t;
    return x_;
  }

  bool exited() const { return exited_; }

 private:
  ProductComponent c_;
  const ScaleTable* table_;
  RandomStream rs_;
  double x_ = 0.0;
  double B_ = 0.0;
  double clock_ = 0.0;
  double t_ = 0.0;
  bool frozen_ = false;
  bool exited_ = false;
};

}  // namespace

PathSample simulate_product(const std::vector<ProductComponent>& components, double t_end,
                            double dt, std::uint64_t seed) {
  if (components.empty()) throw std::invalid_argument("simulate_product: no components");
  if (!(t_end > 0.0) || !(dt > 0.0))
    throw std::invalid_argument("simulate_product: need positive t_end, dt");
  PathSample p;
  p.dim = static_cast<int>(components.size());
  p.scheme = "product";
  p.seed = seed;

  const auto prepared = prepare_components(components);
  std::vector<ComponentState> state;
  for (std::size_t i = 0; i < prepared.size(); ++i)
    state.emplace_back(prepared[i], RandomStream::substream(seed, 0xC0317ull, i),
                       prepared[i].c.start);

  const std::int64_t nsteps = static_cast<std::int64_t>(std::ceil(t_end / dt - 1e-12));
  for (std::int64_t j = 0; j <= nsteps; ++j) {
    const double t = std::min(t_end, static_cast<double>(j) * dt);
    p.times.push_back(t);
    for (auto& st : state) p.states.push_back(st.advance_to(t));
  }
  for (const auto& st : state) p.extent_exit = p.extent_exit || st.exited();
  p.clock_exhausted = p.extent_exit;
  return p;
}

ReturnStats estimate_return(const std::vector<ProductComponent>& components,
                            const std::vector<double>& start, double rho, double t0, double T,
                            double dt, std::int64_t trials, std::uint64_t seed,
                            const ParallelPlan& plan) {
  if (components.size() != start.size())
    throw std::invalid_argument("estimate_return: start dimension mismatch");
  if (!(rho > 0.0)) throw std::invalid_argument("estimate_return: degenerate ball");
  double norm2 = 0.0;
  for (double s : start) norm2 += s * s;
  if (!(std::sqrt(norm2) > rho))
    throw std::invalid_argument("estimate_return: start must lie outside the ball");
  if (!(t0 < T)) throw std::invalid_argument("estimate_return: need t0 < T");
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i].kind == ProductComponent::Kind::TimeChange && components[i].env &&
        std::fabs(start[i]) >= components[i].env->extent())
      throw std::out_of_range("estimate_return: start outside component extent");

  ReturnStats out;
  out.trials = trials;
  out.first_return_times.assign(static_cast<std::size_t>(trials),
                                std::numeric_limits<double>::quiet_NaN());
  const std::int64_t nsteps = static_cast<std::int64_t>(std::ceil(T / dt - 1e-12));

  const auto prepared = prepare_components(components);
  for_chunks(trials, plan, [&](std::int64_t b, std::int64_t e, std::int64_t) {
    for (std::int64_t trial = b; trial < e; ++trial) {
      std::vector<ComponentState> state;
      for (std::size_t i = 0; i < prepared.size(); ++i)
        state.emplace_back(
            prepared[i], RandomStream::substream(seed, static_cast<std::uint64_t>(trial), i),
            start[i]);
      for (std::int64_t j = 1; j <= nsteps; ++j) {
        const double t = std::min(T, static_cast<double>(j) * dt);
        double n2 = 0.0;
        for (auto& st : state) {
          const double x = st.advance_to(t);
          n2 += x * x;
        }
        if (t > t0 && n2 <= rho * rho) {
          out.first_return_times[static_cast<std::size_t>(trial)] = t;
          break;
        }
      }
    }
  });

  for (double t : out.first_return_times)
    if (!std::isnan(t)) ++out.returns;
  out.frequency = static_cast<double>(out.returns) / static_cast<double>(trials);
  const WilsonInterval w = wilson99(out.returns, trials);
  out.wilson_lo = w.lo;
  out.wilson_hi = w.hi;
  return out;
}

PathSample simulate_scale_walk(const Environment1D& env, double q, std::uint64_t seed,
                               const std::vector<double>& record_times, double start_x,
                               std::int64_t max_steps) {
  if (record_times.empty())
    throw std::invalid_argument("simulate_scale_walk: no record times");
  const std::size_t n = env.size();
  const double h = env.step();

  // Local scale increments ds[i] = s(x_{i+1}) - s(x_i). The global table
  // can lose monotonicity to rounding when w spans a wide range; the walk
  // only ever needs cell differences, which stay positive.
  std::vector<double> ds(n - 1);
  bool clamped = false;
  for (std::size_t i = 0; i + 1 < n; ++i)
    ds[i] = 0.5 * h * (clamp_exp(env.node_w(i), &clamped) +
                       clamp_exp(env.node_w(i + 1), &clamped));

  // per-node transition data
  std::vector<double> p_up(n, 0.0), t_mean(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double dl = ds[i - 1], dr = ds[i];
    p_up[i] = dl / (dl + dr);
    const double wl = 0.5 * (env.node_w(i - 1) + env.node_w(i));
    const double wr = 0.5 * (env.node_w(i) + env.node_w(i + 1));
    t_mean[i] = clamp_exp(-q * wl, &clamped) * dr * dl * dl / (dl + dr) +
                clamp_exp(-q * wr, &clamped) * dl * dr * dr / (dl + dr);
  }

  PathSample p;
  p.dim = 1;
  p.scheme = "scale-walk";
  p.seed = seed;
  RandomStream rs(seed);

  std::size_t i = static_cast<std::size_t>(
      std::llround((start_x + env.extent()) / env.step()));
  i = std::min(std::max<std::size_t>(i, 1), n - 2);
  double clock = 0.0;
  std::size_t next = 0;
  std::int64_t steps = 0;
  while (next < record_times.size()) {
    if (i == 0 || i == n - 1) {  // absorbed at the boundary
      p.extent_exit = true;
      p.clock_exhausted = true;
      break;
    }
    if (++steps > max_steps) {
      p.step_budget_hit = true;
      break;
    }
    clock += t_mean[i];
    i = rs.uniform() < p_up[i] ? i + 1 : i - 1;
    while (next < record_times.size() && record_times[next] <= clock) {
      p.times.push_back(record_times[next]);
      p.states.push_back(env.node_x(i));
      ++next;
    }
  }
  // absorbed or budget-stopped paths hold their last position
  while (next < record_times.size()) {
    p.times.push_back(record_times[next]);
    p.states.push_back(env.node_x(i));
    ++next;
  }
  return p;
}

SlowMovementResult slow_movement_study(
    const std::function<Environment1D(std::uint64_t)>& env_of, int n_envs,
    int paths_per_env, double q, const std::vector<double>& t_grid, std::uint64_t seed,
    const ParallelPlan& plan) {
  SlowMovementResult res;
  res.t_grid = t_grid;
  const std::int64_t total = static_cast<std::int64_t>(n_envs) * paths_per_env;
  std::vector<double> abs_pos(static_cast<std::size_t>(total) * t_grid.size(), 0.0);
  std::vector<std::uint8_t> absorbed(static_cast<std::size_t>(total), 0);

  ParallelPlan env_plan = plan;
  env_plan.chunk = 1;  // one environment per chunk
  for_chunks(n_envs, env_plan, [&](std::int64_t b, std::int64_t e, std::int64_t) {
    for (std::int64_t env_i = b; env_i < e; ++env_i) {
      const Environment1D env =
          env_of(substream_seed(seed, static_cast<std::uint64_t>(env_i), 0xE17ull));
      for (int path = 0; path < paths_per_env; ++path) {
        const std::int64_t row = env_i * paths_per_env + path;
        const PathSample ps = simulate_scale_walk(
            env, q,
            substream_seed(seed, static_cast<std::uint64_t>(env_i),
                           static_cast<std::uint64_t>(path) + 1),
            t_grid);
        for (std::size_t k = 0; k < t_grid.size(); ++k)
          abs_pos[static_cast<std::size_t>(row) * t_grid.size() + k] =
              std::fabs(ps.state(k));
        absorbed[static_cast<std::size_t>(row)] =
            ps.extent_exit || ps.step_budget_hit ? 1 : 0;
      }
    }
  });

  std::vector<double> logs_t, logs_m;
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    std::vector<double> col(static_cast<std::size_t>(total));
    for (std::int64_t rowi = 0; rowi < total; ++rowi)
      col[static_cast<std::size_t>(rowi)] =
          abs_pos[static_cast<std::size_t>(rowi) * t_grid.size() + k];
    const double med = median(std::move(col));
    res.medians.push_back(med);
    logs_t.push_back(std::log(t_grid[k]));
    logs_m.push_back(std::log(std::max(med, 1e-300)));
  }
  res.fit = fit_line(logs_t, logs_m);
  res.paths = total;
  for (auto a : absorbed) res.absorbed += a;
  return res;
}

}  // namespace remlab
