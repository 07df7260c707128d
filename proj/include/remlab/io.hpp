#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "remlab/conditions.hpp"
#include "remlab/dirichlet.hpp"
#include "remlab/environment.hpp"
#include "remlab/sde.hpp"

namespace remlab {

std::string format_g17(double v);

// Environment files: header `x,w`, >= 15 significant digits. Products
// write one file per coordinate: base_1.csv ... base_d.csv.
void write_environment_csv(const Environment1D& env, const std::string& path);
Environment1D read_environment_csv(const std::string& path);
std::vector<std::string> write_product_csv(const ProductEnvironment& env,
                                           const std::string& base_path);

nlohmann::json environment_meta(const std::string& law, std::uint64_t seed, double r,
                                double alpha, double h, double extent);
void write_json(const nlohmann::json& j, const std::string& path);

// EnergyReport: `<base>_rows.csv` with n,mass,energy,ratio and
// `<base>_k.csv` with k,n_of_k,lemma33_slack,lemma34_slack,cor35_slack.
void write_energy_report(const EnergyReport& report, const std::string& base_path);

void write_event_csv(const EventEstimate& e, const std::string& path);
void write_path_csv(const PathSample& p, const std::string& path, std::size_t stride = 1);
void write_return_csv(const ReturnStats& r, const std::string& path);
void write_criterion_csv(const CriterionReport& r, const std::string& path);

}  // namespace remlab
