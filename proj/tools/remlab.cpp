// remlab: reproducible front door for the environment/criterion/simulation
// pipelines. Subcommands: sample, energy, index, conditions, simulate,
// criterion, report. Exit codes: 0 ok, 2 config error, 3 numerical
// failure, 4 fatal horizon exhaustion.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "remlab/conditions.hpp"
#include "remlab/dirichlet.hpp"
#include "remlab/gaussian_field.hpp"
#include "remlab/io.hpp"
#include "remlab/law.hpp"
#include "remlab/sde.hpp"

using nlohmann::json;
using namespace remlab;

namespace {

constexpr const char* kVersion = "remlab 0.1.0";

struct CliError {
  int code;
  std::string message;
};

std::string out_path(const std::string& name) {
  if (name.empty()) return name;
  std::filesystem::path p(name);
  if (p.is_absolute()) return name;
  if (const char* root = std::getenv("REMLAB_OUT_DIR")) {
    std::filesystem::create_directories(root);
    return (std::filesystem::path(root) / p).string();
  }
  return name;
}

json base_manifest(const std::string& cmd, const json& config, std::uint64_t seed,
                   int workers) {
  json m;
  m["tool"] = kVersion;
  m["command"] = cmd;
  m["config"] = config;
  m["seed"] = seed;
  m["workers"] = workers;
  return m;
}

void finish_manifest(json& m, std::chrono::steady_clock::time_point t0,
                     const std::string& base) {
  const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
  m["wall_time_s"] = dt.count();
  if (!base.empty()) write_json(m, base + ".manifest.json");
}

std::vector<long> parse_k_grid(const std::string& s) {
  std::vector<long> ks;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    ks.push_back(std::stol(tok));
  }
  if (ks.empty()) throw CliError{2, "empty k grid"};
  return ks;
}

EnvironmentLaw law_from_name(const std::string& name, double r, double alpha,
                             const std::string& kernel_id, const json& levy_cfg) {
  EnvironmentLaw law;
  law.r = r;
  law.alpha = alpha;
  if (name == "brownian") {
    law.kind = EnvironmentLaw::Kind::BrownianTwoSided;
  } else if (name == "zero" || name == "abs" || name == "linear") {
    law.kind = EnvironmentLaw::Kind::Deterministic;
    law.shape = name;
  } else if (name == "gaussian") {
    law.kind = EnvironmentLaw::Kind::GaussianKernel;
    law.kernel_id = kernel_id.empty() ? "brox" : kernel_id;
  } else if (name == "levy") {
    law.kind = EnvironmentLaw::Kind::LevyTwoSided;
    LevyTriplet t;
    if (levy_cfg.contains("gaussian_var")) t.gaussian_var = levy_cfg["gaussian_var"];
    if (levy_cfg.contains("drift")) t.drift = levy_cfg["drift"];
    if (levy_cfg.contains("stable_index")) {
      t.has_stable = true;
      t.stable_index = levy_cfg["stable_index"];
      if (levy_cfg.contains("stable_skew")) t.stable_skew = levy_cfg["stable_skew"];
    }
    if (levy_cfg.contains("cp")) {
      for (const auto& p : levy_cfg["cp"]) {
        CompoundPoissonPart part;
        part.rate = p.at("rate");
        part.jumps.a = p.at("jump");
        t.cp.push_back(part);
      }
    }
    if (levy_cfg.contains("epsilon")) t.epsilon = levy_cfg["epsilon"];
    law.triplet = t;
    if (levy_cfg.contains("exponent")) law.levy_exponent = levy_cfg["exponent"];
    else if (t.has_stable) law.levy_exponent = t.stable_index;
  } else {
    throw CliError{2, "unknown law: " + name};
  }
  return law;
}

PotentialPtr load_env_arg(const std::string& env_file, const std::string& law_name,
                          double r, double alpha, int d, std::uint64_t seed, double L,
                          double h, const std::string& kernel_id, const json& levy_cfg) {
  if (!env_file.empty()) {
    return std::make_shared<Environment1D>(read_environment_csv(env_file));
  }
  if (law_name == "zero") return std::make_shared<ZeroPotential>(d);
  EnvironmentLaw law = law_from_name(law_name, r, alpha, kernel_id, levy_cfg);
  if (d > 1) {
    EnvironmentLaw prod;
    prod.kind = EnvironmentLaw::Kind::Product;
    prod.r = r;
    prod.alpha = alpha;
    prod.factors.assign(static_cast<std::size_t>(d), law);
    return sample_environment(prod, seed, L, h);
  }
  return sample_environment(law, seed, L, h);
}

int run_cli(int argc, char** argv) {
  CLI::App app{"random-environment diffusion laboratory"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // shared option storage
  std::string law_name = "brownian", kernel_id, env_file, out_base, config_file;
  std::string scheme = "time-change", components_spec, preset, event_name, report_dir;
  double r = 1.5, alpha = 0.5, theta = 1.0, L = 0.0, h = 0.0;
  double t_end = 1.0, dt = 1e-4, dt_clock = 1e-4, record_dt = 0.01;
  double q = 2.0, a_par = 0.1, b_par = 3.0, m_par = 1.0, a0 = 1.0, rho = 1.0, t0 = 0.0;
  std::uint64_t seed = 1;
  std::int64_t trials = 100000;
  int d = 1, n_max = 8, mesh = 64, workers = 0, n_envs = 100;
  long k_single = 100;
  std::string k_grid_str = "1,10,100,1000";
  std::size_t stride = 1;
  bool strict_horizon = false, mixing = false, sphere = false, do_search = false;
  double quad_cells = 0.0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed);
    sub->add_option("--workers", workers);
    sub->add_option("--out", out_base);
    sub->add_option("--config", config_file);
  };

  auto* sample = app.add_subcommand("sample", "sample an environment to CSV");
  sample->add_option("--law", law_name);
  sample->add_option("--kernel", kernel_id);
  sample->add_option("--r", r);
  sample->add_option("--alpha", alpha);
  sample->add_option("--d", d);
  sample->add_option("--L", L);
  sample->add_option("--step", h);
  add_common(sample);

  auto* energy_cmd = app.add_subcommand("energy", "mass/energy table and bound suite");
  energy_cmd->add_option("--law", law_name);
  energy_cmd->add_option("--env", env_file);
  energy_cmd->add_option("--d", d);
  energy_cmd->add_option("--r", r);
  energy_cmd->add_option("--alpha", alpha);
  energy_cmd->add_option("--theta", theta);
  energy_cmd->add_option("--n-max", n_max);
  energy_cmd->add_option("--k-grid", k_grid_str);
  energy_cmd->add_option("--quad-cells", quad_cells);
  energy_cmd->add_option("--L", L);
  energy_cmd->add_option("--step", h);
  add_common(energy_cmd);

  auto* index_cmd = app.add_subcommand("index", "recurrence-strength index n(k)");
  index_cmd->add_option("--law", law_name);
  index_cmd->add_option("--env", env_file);
  index_cmd->add_option("--d", d);
  index_cmd->add_option("--r", r);
  index_cmd->add_option("--alpha", alpha);
  index_cmd->add_option("--theta", theta);
  index_cmd->add_option("--k", k_single);
  index_cmd->add_option("--k-grid", k_grid_str)->default_str("");
  index_cmd->add_option("--n-max", n_max)->default_val(32);
  index_cmd->add_option("--quad-cells", quad_cells);
  index_cmd->add_flag("--strict-horizon", strict_horizon);
  add_common(index_cmd);

  auto* cond = app.add_subcommand("conditions", "theorem condition checks and estimates");
  cond->add_option("--kernel", kernel_id);
  cond->add_option("--r", r);
  cond->add_option("--alpha", alpha);
  cond->add_option("--law", law_name);
  cond->add_option("--event", event_name);
  cond->add_option("--trials", trials);
  cond->add_option("--a", a_par);
  cond->add_option("--b", b_par);
  cond->add_option("--M", m_par);
  cond->add_option("--a0", a0);
  cond->add_option("--theta", theta);
  cond->add_option("--mesh", mesh);
  cond->add_option("--n-max", n_max)->default_val(40);
  cond->add_flag("--mixing", mixing);
  cond->add_flag("--sphere", sphere);
  cond->add_flag("--search", do_search);
  bool subsequence = false;
  cond->add_flag("--subsequence", subsequence);
  cond->add_option("--preset", preset);
  std::vector<std::string> env_files;
  cond->add_option("--env", env_files);
  add_common(cond);

  auto* sim = app.add_subcommand("simulate", "simulate diffusions and products");
  sim->add_option("--scheme", scheme);
  sim->add_option("--env", env_file);
  sim->add_option("--law", law_name);
  sim->add_option("--q", q);
  sim->add_option("--t-end", t_end);
  sim->add_option("--dt", dt);
  sim->add_option("--dt-clock", dt_clock);
  sim->add_option("--record-dt", record_dt);
  sim->add_option("--stride", stride);
  sim->add_option("--components", components_spec);
  sim->add_option("--L", L);
  sim->add_option("--step", h);
  sim->add_option("--r", r);
  add_common(sim);

  auto* crit = app.add_subcommand("criterion", "product-recurrence criterion");
  crit->add_option("--preset", preset);
  crit->add_option("--r", r);
  crit->add_option("--theta", theta)->default_val(2.0);
  crit->add_option("--k-grid", k_grid_str);
  crit->add_option("--n-max", n_max)->default_val(12);
  crit->add_option("--envs", n_envs);
  crit->add_option("--quad-cells", quad_cells);
  crit->add_flag("--strict-horizon", strict_horizon);
  add_common(crit);

  auto* rep = app.add_subcommand("report", "aggregate prior run CSVs");
  rep->add_option("--dir", report_dir)->required();
  add_common(rep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help/--version
    std::cerr << json{{"error", {{"code", 2}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  }

  json levy_cfg;
  if (!config_file.empty()) {
    std::ifstream in(config_file);
    if (!in) throw CliError{2, "cannot open config: " + config_file};
    json cfg = json::parse(in, nullptr, true, true);
    for (const auto& [key, val] : cfg.items()) {
      (void)val;
      if (key != "levy" && key != "r" && key != "alpha" && key != "trials")
        throw CliError{2, "unknown config key: " + key};
    }
    if (cfg.contains("levy")) levy_cfg = cfg["levy"];
    // flags win over the config file: only fill values left at defaults
    if (cfg.contains("r") && r == 1.5) r = cfg["r"];
    if (cfg.contains("alpha") && alpha == 0.5) alpha = cfg["alpha"];
    if (cfg.contains("trials") && trials == 100000) trials = cfg["trials"].get<std::int64_t>();
  }

  ParallelPlan plan;
  plan.workers = workers;
  QuadratureSpec quad;
  quad.cells_per_unit = quad_cells;
  quad.plan = plan;
  const auto t_start = std::chrono::steady_clock::now();
  const std::string base = out_path(out_base);

  if (sample->parsed()) {
    if (L == 0.0) L = std::pow(r, n_max + 1);
    if (h == 0.0) h = L / 1024.0;
    json cfg{{"law", law_name}, {"r", r}, {"alpha", alpha}, {"d", d}, {"L", L}, {"h", h}};
    json manifest = base_manifest("sample", cfg, seed, workers);
    // always materialize a grid (no zero-potential shortcut: CSV needs nodes)
    EnvironmentLaw one = law_from_name(law_name, r, alpha, kernel_id, levy_cfg);
    PotentialPtr env;
    if (d > 1) {
      EnvironmentLaw prod;
      prod.kind = EnvironmentLaw::Kind::Product;
      prod.r = r;
      prod.alpha = alpha;
      prod.factors.assign(static_cast<std::size_t>(d), one);
      env = sample_environment(prod, seed, L, h);
    } else {
      env = sample_environment(one, seed, L, h);
    }
    if (base.empty()) throw CliError{2, "sample: --out is required"};
    const std::string label =
        law_name == "zero" || law_name == "abs" || law_name == "linear"
            ? "deterministic:" + law_name
            : law_name;
    if (const auto* prod = dynamic_cast<const ProductEnvironment*>(env.get())) {
      auto files = write_product_csv(*prod, base);
      manifest["files"] = files;
    } else if (const auto* e1 = dynamic_cast<const Environment1D*>(env.get())) {
      write_environment_csv(*e1, base);
      manifest["files"] = {base};
    } else {
      throw CliError{2, "sample: unsupported environment type for CSV"};
    }
    write_json(environment_meta(label, seed, r, alpha, h, L), base + ".meta.json");
    finish_manifest(manifest, t_start, base);
    std::cout << "wrote " << base << "\n";
    return 0;
  }

  if (energy_cmd->parsed()) {
    if (L == 0.0) L = std::pow(r, n_max + 1);
    if (h == 0.0) h = L / 1024.0;
    PotentialPtr env =
        load_env_arg(env_file, law_name, r, alpha, d, seed, L, h, kernel_id, levy_cfg);
    BumpProfile profile(r, env->dim());
    const auto ks = parse_k_grid(k_grid_str);
    EnergyReport report = verify_bounds(*env, ks, theta, profile, quad, n_max);
    json cfg{{"law", law_name}, {"env", env_file},      {"r", r},
             {"theta", theta},   {"n_max", n_max},       {"k_grid", ks},
             {"quad_cells", quad.resolved_cells_per_unit()}, {"seed", seed}};
    json manifest = base_manifest("energy", cfg, seed, workers);
    manifest["violations"] = report.violations;
    if (!base.empty()) write_energy_report(report, base);
    finish_manifest(manifest, t_start, base);
    std::cout << "n rows: " << report.rows.size() << ", k rows: " << report.lemmas.size()
              << ", violations: " << report.violations << "\n";
    if (report.violations != 0) {
      std::cerr << json{{"error",
                         {{"code", 3},
                          {"message", "bound suite reported " +
                                          std::to_string(report.violations) + " violations"}}}}
                       .dump()
                << "\n";
      return 3;
    }
    return 0;
  }

  if (index_cmd->parsed()) {
    if (L == 0.0) L = std::pow(r, n_max + 1);
    if (h == 0.0) h = L / 1024.0;
    PotentialPtr env =
        load_env_arg(env_file, law_name, r, alpha, d, seed, L, h, kernel_id, levy_cfg);
    BumpProfile profile(r, env->dim());
    std::vector<long> ks =
        index_cmd->count("--k-grid") ? parse_k_grid(k_grid_str) : std::vector<long>{k_single};
    bool exhausted = false;
    for (long k : ks) {
      auto n = index_nk(*env, k, theta, profile, quad, n_max);
      if (n)
        std::cout << "n(" << k << ")=" << *n << "\n";
      else {
        std::cout << "n(" << k << ")=not-found(horizon " << n_max << ")\n";
        exhausted = true;
      }
    }
    json cfg{{"law", law_name}, {"r", r}, {"theta", theta}, {"n_max", n_max}};
    json manifest = base_manifest("index", cfg, seed, workers);
    finish_manifest(manifest, t_start, base);
    if (exhausted && strict_horizon) return 4;
    return 0;
  }

  if (cond->parsed()) {
    json cfg{{"r", r}};
    json manifest = base_manifest("conditions", cfg, seed, workers);
    if (preset == "thm-brownian") {
      law_name = "brownian";
      do_search = true;
      event_name = "re1";
    } else if (preset == "thm-levy-poisson") {
      event_name = "levy";
      levy_cfg = json{{"cp", json::array({json{{"rate", 1.0}, {"jump", 2.0}}})}};
      m_par = 1.0;
      a_par = 1.0;
    } else if (!preset.empty()) {
      throw CliError{2, "unknown preset: " + preset};
    }

    if (subsequence) {
      if (env_files.empty()) throw CliError{2, "--subsequence needs an --env file"};
      auto env = std::make_shared<Environment1D>(read_environment_csv(env_files[0]));
      const auto sr = select_subsequence(env, r, alpha, a_par, b_par, n_max);
      std::cout << "selected:";
      for (const auto& en : sr.entries) std::cout << " " << en.n;
      std::cout << "\nrelations_ok=" << (sr.all_relations_ok() ? "true" : "false") << "\n";
      finish_manifest(manifest, t_start, base);
      return 0;
    }
    if (sphere) {
      std::vector<Environment1D> comps;
      for (const auto& f : env_files) comps.push_back(read_environment_csv(f));
      if (comps.empty()) throw CliError{2, "--sphere needs --env component files"};
      ProductEnvironment env(std::move(comps));
      auto sc = check_sphere_condition(env, a0, theta, mesh);
      std::cout << "sphere inf=" << sc.infimum << " holds=" << (sc.holds ? "true" : "false")
                << "\n";
      finish_manifest(manifest, t_start, base);
      return 0;
    }
    if (mixing) {
      const Kernel kernel = lookup_kernel(kernel_id.empty() ? "brox" : kernel_id);
      auto md = gauss_mixing_decay(kernel, r, alpha, n_max);
      std::cout << "terms:";
      for (double t : md.terms) std::cout << " " << t;
      std::cout << "\nverdict=" << (md.verdict ? "true" : "false") << "\n";
      finish_manifest(manifest, t_start, base);
      return 0;
    }
    if (do_search) {
      EnvironmentLaw law = law_from_name(law_name, r, alpha, kernel_id, levy_cfg);
      auto cs = thm_recurrence_search(law, r, trials, seed, plan);
      std::cout << "re1: p_hat=" << cs.re1.p_hat << " wilson_lo=" << cs.re1.wilson_lo
                << " successes=" << cs.re1.successes << "\n";
      std::cout << "search: found=" << (cs.found ? "true" : "false") << " a=" << cs.a_best
                << " successes=" << cs.best.successes << " wilson_lo=" << cs.best.wilson_lo
                << "\n";
      if (!base.empty()) {
        write_event_csv(cs.re1, base + ".re1.csv");
        write_event_csv(cs.best, base + ".search.csv");
      }
      finish_manifest(manifest, t_start, base);
      return 0;
    }
    if (!event_name.empty()) {
      EventEstimate est;
      if (event_name == "re1") {
        est = estimate_event_re1(law_from_name(law_name, r, alpha, kernel_id, levy_cfg), r,
                                 trials, seed, plan);
      } else if (event_name == "mainassump") {
        est = estimate_event_mainassump(law_from_name(law_name, r, alpha, kernel_id, levy_cfg),
                                        r, a_par, b_par, trials, seed, plan);
      } else if (event_name == "levy") {
        EnvironmentLaw law = law_from_name("levy", r, alpha, kernel_id, levy_cfg);
        auto le = estimate_levy_event(law.triplet, m_par, a_par, trials, seed, plan);
        est = le.estimate;
        std::cout << "hypothesis_ok=" << (le.hypothesis_ok ? "true" : "false") << "\n";
      } else {
        throw CliError{2, "unknown event: " + event_name};
      }
      std::cout << "trials=" << est.trials << " successes=" << est.successes
                << " p_hat=" << est.p_hat << " wilson_lo=" << est.wilson_lo
                << " wilson_hi=" << est.wilson_hi << "\n";
      if (!base.empty()) write_event_csv(est, base + ".event.csv");
      finish_manifest(manifest, t_start, base);
      return 0;
    }
    // default: the kernel condition integrals
    const Kernel kernel = lookup_kernel(kernel_id.empty() ? "brox" : kernel_id);
    auto g = gauss_condition_integrals(kernel, r, quad);
    std::cout << "(" << g.sup_term << ", " << g.inf_inner << ", " << g.inf_annulus
              << ", holds=" << (g.holds ? "true" : "false") << ")\n";
    finish_manifest(manifest, t_start, base);
    return 0;
  }

  if (sim->parsed()) {
    json cfg{{"scheme", scheme}, {"t_end", t_end}, {"dt", dt}, {"dt_clock", dt_clock}};
    json manifest = base_manifest("simulate", cfg, seed, workers);
    if (scheme == "product") {
      std::vector<ProductComponent> comps;
      std::stringstream ss(components_spec.empty() ? "bm,bm" : components_spec);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        ProductComponent c;
        if (tok == "bm") {
          c.kind = ProductComponent::Kind::Brownian;
        } else if (tok.rfind("tc:", 0) == 0) {
          const auto p1 = tok.find(':', 3);
          if (p1 == std::string::npos) throw CliError{2, "component format: tc:<file>:<q>"};
          c.kind = ProductComponent::Kind::TimeChange;
          c.env = std::make_shared<Environment1D>(
              read_environment_csv(tok.substr(3, p1 - 3)));
          c.q = std::stod(tok.substr(p1 + 1));
          c.dt_clock = dt_clock;
        } else {
          throw CliError{2, "unknown component: " + tok};
        }
        comps.push_back(std::move(c));
      }
      PathSample p = simulate_product(comps, t_end, dt, seed);
      if (!base.empty()) write_path_csv(p, base, stride);
      std::cout << "steps=" << p.times.size() << " exit=" << (p.extent_exit ? 1 : 0) << "\n";
      finish_manifest(manifest, t_start, base);
      return 0;
    }
    Environment1D env = [&]() {
      if (!env_file.empty()) return read_environment_csv(env_file);
      if (law_name == "zero") return Environment1D::zero(L > 0 ? L : 1000.0);
      if (L == 0.0) L = 64.0;
      if (h == 0.0) h = L / 1024.0;
      return sample_environment_1d(law_from_name(law_name, r, alpha, kernel_id, levy_cfg),
                                   seed, L, h);
    }();
    PathSample p;
    if (scheme == "time-change") {
      p = simulate_time_change(env, q, t_end, dt_clock, seed, record_dt);
    } else if (scheme == "euler") {
      Environment1D sm = env.mollify_bandwidth > 0 ? env : mollify(env, 4.0 * env.step());
      p = simulate_euler(sm, t_end, dt, seed, record_dt);
    } else if (scheme == "walk") {
      std::vector<double> times;
      for (double t = record_dt; t <= t_end * (1 + 1e-12); t += record_dt) times.push_back(t);
      p = simulate_scale_walk(env, q, seed, times);
    } else {
      throw CliError{2, "unknown scheme: " + scheme};
    }
    if (!base.empty()) write_path_csv(p, base, stride);
    std::cout << "steps=" << p.times.size() << " clock_exhausted=" << (p.clock_exhausted ? 1 : 0)
              << "\n";
    finish_manifest(manifest, t_start, base);
    return 0;
  }

  if (crit->parsed()) {
    if (preset.empty() || preset == "cor-brox-bm") {
      const auto ks = parse_k_grid(k_grid_str);
      const double extent = std::pow(r, n_max + 1);
      const double step = extent / 1024.0;
      BumpProfile profile(r, 1);
      int pass_both = 0, incomplete = 0;
      json per_env = json::array();
      for (int e = 0; e < n_envs; ++e) {
        auto env = std::make_shared<Environment1D>(
            sample_brownian_2sided(substream_seed(seed, static_cast<std::uint64_t>(e)),
                                   extent, step));
        std::vector<ComponentSpec> comps;
        comps.push_back({env, theta, 1});
        comps.push_back({std::make_shared<ZeroPotential>(1), 1.0, 1});
        CriterionReport cr = product_criterion(comps, ks, profile, quad, n_max);
        if (!cr.complete) {
          ++incomplete;
          if (strict_horizon) return 4;
        } else if (cr.tail_decreasing && cr.final_over_second <= 0.2) {
          ++pass_both;
        }
        if (!base.empty() && e == 0) write_criterion_csv(cr, base + ".first_env.csv");
        per_env.push_back(json{{"env", e},
                               {"complete", cr.complete},
                               {"tail_decreasing", cr.tail_decreasing},
                               {"final_over_second", cr.final_over_second}});
      }
      json cfg{{"preset", "cor-brox-bm"}, {"r", r}, {"theta", theta},
               {"n_max", n_max}, {"envs", n_envs}};
      json manifest = base_manifest("criterion", cfg, seed, workers);
      manifest["per_env"] = per_env;
      manifest["pass_both"] = pass_both;
      manifest["incomplete"] = incomplete;
      std::cout << "envs=" << n_envs << " decreasing-and-small-final=" << pass_both
                << " incomplete=" << incomplete << "\n";
      finish_manifest(manifest, t_start, base);
      return 0;
    }
    throw CliError{2, "unknown preset: " + preset};
  }

  if (rep->parsed()) {
    // derived data only: walk the directory, summarize known CSV kinds
    int files = 0;
    json summary = json::array();
    for (const auto& entry : std::filesystem::directory_iterator(report_dir)) {
      const std::string p = entry.path().string();
      if (entry.path().extension() != ".csv") continue;
      ++files;
      std::ifstream in(p);
      std::string header;
      std::getline(in, header);
      json item{{"file", entry.path().filename().string()}, {"header", header}};
      if (header.rfind("k,n_of_k", 0) == 0) {
        int rows = 0, negative = 0;
        std::string line;
        while (std::getline(in, line)) {
          ++rows;
          std::stringstream ss(line);
          std::string tok;
          int col = 0;
          while (std::getline(ss, tok, ',')) {
            if (col >= 2 && !tok.empty() && std::stod(tok) < 0.0) ++negative;
            ++col;
          }
        }
        item["rows"] = rows;
        item["negative_slacks"] = negative;
      } else {
        int rows = 0;
        std::string line;
        while (std::getline(in, line)) ++rows;
        item["rows"] = rows;
      }
      summary.push_back(item);
    }
    json manifest = base_manifest("report", json{{"dir", report_dir}}, seed, workers);
    manifest["summary"] = summary;
    std::cout << summary.dump(2) << "\n";
    finish_manifest(manifest, t_start, base);
    return files > 0 ? 0 : 2;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const CliError& e) {
    std::cerr << json{{"error", {{"code", e.code}, {"message", e.message}}}}.dump() << "\n";
    return e.code;
  } catch (const HorizonExhausted& e) {
    std::cerr << json{{"error", {{"code", 4}, {"message", e.what()}}}}.dump() << "\n";
    return 4;
  } catch (const NumericalError& e) {
    std::cerr << json{{"error", {{"code", 3}, {"message", e.what()}}}}.dump() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << json{{"error", {{"code", 2}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << json{{"error", {{"code", 2}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"code", 3}, {"message", e.what()}}}}.dump() << "\n";
    return 3;
  }
}
