#include "deloc/json_io.hpp"

#include <cstdio>
#include <fstream>

namespace deloc {

namespace {

std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

nlohmann::json to_json(const GirthReport& report) {
  nlohmann::json j;
  j["girth"] = report.girth ? nlohmann::json(*report.girth) : nlohmann::json();
  j["injectivity_radius"] = report.injectivity_radius;
  j["injectivity_exact"] = report.injectivity_exact;
  j["max_shared_edge_cycle_bound"] = report.max_shared_edge_cycle_bound;
  j["scan_limit"] = report.scan_limit;
  j["scan_truncated"] = report.scan_truncated;
  return j;
}

nlohmann::json to_json(const ConditionFit& fit) {
  nlohmann::json j;
  j["p"] = fit.p;
  j["per_n_norms"] = fit.per_n_norms;
  j["C"] = fit.C;
  j["alpha"] = fit.alpha;
  j["N"] = fit.N;
  j["c_alpha_given"] = fit.c_alpha_given;
  j["no_decay"] = fit.no_decay;
  return j;
}

nlohmann::json to_json(const KernelRecipe& recipe) {
  nlohmann::json j;
  j["theta0"] = recipe.theta0;
  j["epsilon"] = recipe.epsilon;
  j["N"] = recipe.N;
  j["M"] = recipe.M;
  j["R"] = recipe.R;
  j["r"] = recipe.r;
  j["l"] = recipe.l;
  j["r_prime"] = recipe.r_prime;
  j["support_radius"] = recipe.support_radius;
  j["flags"] = recipe.flags;
  return j;
}

nlohmann::json to_json(const RadialKernel& kernel) {
  nlohmann::json j;
  j["d"] = kernel.d;
  j["radial_values"] = kernel.radial_values;
  if (kernel.chebyshev_coefficients)
    j["chebyshev_coefficients"] = *kernel.chebyshev_coefficients;
  return j;
}

RadialKernel radial_kernel_from_json(const nlohmann::json& j) {
  RadialKernel k;
  k.d = j.at("d").get<int>();
  k.radial_values = j.at("radial_values").get<std::vector<double>>();
  if (j.contains("chebyshev_coefficients"))
    k.chebyshev_coefficients =
        j["chebyshev_coefficients"].get<std::vector<double>>();
  return k;
}

nlohmann::json to_json(const SurveyRow& row) {
  nlohmann::json j;
  j["j"] = row.j;
  j["lambda"] = row.lambda;
  j["tempered"] = row.tempered;
  j["mass_target"] = row.mass_target;
  j["E_min"] = row.e_min;
  j["delta"] = row.delta;
  j["bound"] = row.bound;
  j["lhs5"] = row.lhs5;
  j["rhs5"] = row.rhs5;
  j["lhs8"] = row.lhs8;
  j["pass"] = row.pass;
  j["kernel_eigenvalue"] = row.kernel_eigenvalue;
  j["transform_value"] = row.transform_value;
  j["norm_1inf"] = row.norm_1inf;
  j["implied_support_bound"] = row.implied_support_bound;
  j["r_prime"] = row.r_prime;
  j["support_radius"] = row.support_radius;
  j["flags"] = row.flags;
  return j;
}

nlohmann::json to_json(const DelocalizationReport& report) {
  nlohmann::json j;
  j["schema"] = kSchemaVersion;
  j["vertex_count"] = report.vertex_count;
  j["d"] = report.d;
  j["epsilon"] = report.epsilon;
  j["p"] = report.p;
  j["recipe_N"] = report.recipe_N;
  j["girth"] = to_json(report.girth);
  j["condition"] = to_json(report.condition);
  nlohmann::json recipes = nlohmann::json::array();
  for (const auto& r : report.recipes) recipes.push_back(to_json(r));
  j["recipes"] = recipes;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) rows.push_back(to_json(r));
  j["rows"] = rows;
  j["all_pass"] = report.all_pass;
  j["min_support_over_spectrum"] = report.min_support_over_spectrum;
  j["bound_vacuous"] = report.bound_vacuous;
  return j;
}

std::string report_csv(const DelocalizationReport& report) {
  std::string out =
      "j,lambda,tempered,mass_target,E_min,delta,bound,lhs5,rhs5,lhs8,pass\n";
  for (const auto& r : report.rows) {
    out += std::to_string(r.j);
    out += ',' + csv_double(r.lambda);
    out += ',';
    out += r.tempered ? '1' : '0';
    out += ',' + csv_double(r.mass_target);
    out += ',' + std::to_string(r.e_min);
    out += ',' + csv_double(r.delta);
    out += ',' + csv_double(r.bound);
    out += ',' + csv_double(r.lhs5);
    out += ',' + csv_double(r.rhs5);
    out += ',' + csv_double(r.lhs8);
    out += ',';
    out += r.pass ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error(errc::bad_argument, "cannot write '" + path + "'");
  out << text;
}

}  // namespace deloc
