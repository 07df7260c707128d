#include "remlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace remlab {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_environment_csv(const Environment1D& env, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "x,w\n";
  for (std::size_t i = 0; i < env.size(); ++i)
    out << format_g17(env.node_x(i)) << "," << format_g17(env.node_w(i)) << "\n";
}

Environment1D read_environment_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  std::vector<double> xs, ws;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("x,", 0) == 0) continue;
    }
    std::istringstream ss(line);
    double x, w;
    char c;
    if (!(ss >> x >> c >> w)) throw std::runtime_error("bad env row: " + line);
    xs.push_back(x);
    ws.push_back(w);
  }
  if (xs.size() < 3 || xs.size() % 2 == 0)
    throw std::runtime_error("env csv: need an odd number (>=3) of rows");
  return Environment1D(-xs.front(), std::move(ws));
}

std::vector<std::string> write_product_csv(const ProductEnvironment& env,
                                           const std::string& base_path) {
  std::vector<std::string> files;
  const auto& comps = env.components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    std::string p = base_path + "_" + std::to_string(i + 1) + ".csv";
    write_environment_csv(comps[i], p);
    files.push_back(std::move(p));
  }
  return files;
}

nlohmann::json environment_meta(const std::string& law, std::uint64_t seed, double r,
                                double alpha, double h, double extent) {
  nlohmann::json j;
  j["law"] = law;
  j["seed"] = seed;
  j["r"] = r;
  j["alpha"] = alpha;
  j["h"] = h;
  j["L"] = extent;
  return j;
}

void write_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << j.dump(2) << "\n";
}

namespace {
std::string verdict_slack(const BoundVerdict& v) {
  if (v.status == BoundVerdict::Status::Skipped) return "";
  return format_g17(v.rel_slack);
}
}  // namespace

void write_energy_report(const EnergyReport& report, const std::string& base_path) {
  {
    std::ofstream out(base_path + "_rows.csv");
    if (!out) throw std::runtime_error("cannot open for write: " + base_path + "_rows.csv");
    out << "n,mass,energy,ratio\n";
    for (const auto& r : report.rows)
      out << r.n << "," << format_g17(r.mass) << "," << format_g17(r.energy) << ","
          << format_g17(r.ratio) << "\n";
  }
  {
    std::ofstream out(base_path + "_k.csv");
    if (!out) throw std::runtime_error("cannot open for write: " + base_path + "_k.csv");
    out << "k,n_of_k,lemma33_slack,lemma34_slack,cor35_slack\n";
    for (const auto& l : report.lemmas) {
      out << l.k << ",";
      if (l.n_of_k) out << *l.n_of_k;
      out << "," << verdict_slack(l.lemma33) << "," << verdict_slack(l.lemma34) << ","
          << verdict_slack(l.cor35) << "\n";
    }
  }
}

void write_event_csv(const EventEstimate& e, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "trials,successes,p_hat,wilson_lo,wilson_hi,seed\n";
  out << e.trials << "," << e.successes << "," << format_g17(e.p_hat) << ","
      << format_g17(e.wilson_lo) << "," << format_g17(e.wilson_hi) << "," << e.seed << "\n";
}

void write_path_csv(const PathSample& p, const std::string& path, std::size_t stride) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "t";
  for (int i = 1; i <= p.dim; ++i) out << ",x" << i;
  out << "\n";
  if (stride == 0) stride = 1;
  for (std::size_t j = 0; j < p.times.size(); j += stride) {
    out << format_g17(p.times[j]);
    for (int i = 0; i < p.dim; ++i) out << "," << format_g17(p.state(j, i));
    out << "\n";
  }
}

void write_return_csv(const ReturnStats& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "trials,returns,frequency,wilson_lo,wilson_hi\n";
  out << r.trials << "," << r.returns << "," << format_g17(r.frequency) << ","
      << format_g17(r.wilson_lo) << "," << format_g17(r.wilson_hi) << "\n";
}

void write_criterion_csv(const CriterionReport& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "k";
  if (!r.rows.empty())
    for (std::size_t i = 0; i < r.rows.front().n_i.size(); ++i) out << ",n" << i + 1;
  out << ",raw,scaled,complete\n";
  for (const auto& row : r.rows) {
    out << row.k;
    for (const auto& n : row.n_i) {
      out << ",";
      if (n) out << *n;
    }
    out << "," << (row.complete ? format_g17(row.raw) : "") << ","
        << (row.complete ? format_g17(row.scaled) : "") << "," << (row.complete ? 1 : 0)
        << "\n";
  }
}

}  // namespace remlab
