// Command-line front end: deterministic batch runs over regular graphs with
// JSON/CSV artifacts. Exit codes: 0 all checks passed, 1 an analysis check
// failed, 2 usage or malformed input.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "deloc/delocalization.hpp"
#include "deloc/json_io.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitAnalysisFailure = 1;
constexpr int kExitUsage = 2;

struct KvArgs {
  std::map<std::string, std::string> values;

  long long integer(const std::string& key,
                    std::optional<long long> fallback = std::nullopt) const {
    auto it = values.find(key);
    if (it == values.end()) {
      if (fallback) return *fallback;
      throw deloc::error(deloc::errc::bad_argument, "missing argument " + key);
    }
    return std::stoll(it->second);
  }
};

// Accepts both positional "key=value" tokens and a comma-joined spec string.
KvArgs parse_kv(const std::vector<std::string>& tokens) {
  KvArgs args;
  for (const auto& token : tokens) {
    std::size_t start = 0;
    while (start <= token.size()) {
      std::size_t end = token.find(',', start);
      if (end == std::string::npos) end = token.size();
      const std::string part = token.substr(start, end - start);
      start = end + 1;
      if (part.empty()) continue;
      const std::size_t eq = part.find('=');
      if (eq == std::string::npos)
        throw deloc::error(deloc::errc::bad_argument,
                           "expected key=value, got '" + part + "'");
      args.values[part.substr(0, eq)] = part.substr(eq + 1);
    }
  }
  return args;
}

struct GraphSource {
  std::string path;
  std::string gen_spec;

  deloc::RegularGraph load(nlohmann::json* config_echo) const {
    if (!path.empty() && !gen_spec.empty())
      throw deloc::error(deloc::errc::bad_argument,
                         "--graph and --gen are mutually exclusive");
    if (!path.empty()) {
      if (config_echo) (*config_echo)["graph_file"] = path;
      return deloc::RegularGraph::load_file(path);
    }
    if (!gen_spec.empty()) {
      const KvArgs kv = parse_kv({gen_spec});
      const long long n = kv.integer("n");
      const long long d = kv.integer("d");
      const long long seed = kv.integer("seed", 0);
      if (config_echo) {
        (*config_echo)["gen"] = {{"n", n}, {"d", d}, {"seed", seed}};
      }
      return deloc::RegularGraph::random_regular(
          static_cast<int>(n), static_cast<int>(d),
          static_cast<std::uint64_t>(seed));
    }
    throw deloc::error(deloc::errc::bad_argument,
                       "no graph given; use --graph FILE or --gen n=..,d=..,seed=..");
  }
};

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    deloc::write_text_file(out_path, text);
}

int thread_count_from_env() {
  if (const char* env = std::getenv("DELOC_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

int run_gen(const std::vector<std::string>& tokens, const std::string& out) {
  const KvArgs kv = parse_kv(tokens);
  const auto g = deloc::RegularGraph::random_regular(
      static_cast<int>(kv.integer("n")), static_cast<int>(kv.integer("d")),
      static_cast<std::uint64_t>(kv.integer("seed", 0)));
  emit(out, g.to_edge_list());
  return kExitPass;
}

int run_girth(const GraphSource& source, int scan_limit,
              const std::string& out) {
  nlohmann::json config{{"command", "girth"}, {"scan_limit", scan_limit}};
  const auto g = source.load(&config);
  const auto report = deloc::girth_report(g, scan_limit);
  nlohmann::json j;
  j["schema"] = deloc::kSchemaVersion;
  j["config"] = config;
  j["girth_report"] = deloc::to_json(report);
  emit(out, deloc::dump_json(j));
  return kExitPass;
}

int run_condition(const GraphSource& source, int max_n, double p,
                  std::optional<double> C, std::optional<double> alpha,
                  bool fit, const std::string& out) {
  nlohmann::json config{{"command", "condition"}, {"max_n", max_n}, {"p", p}};
  const auto g = source.load(&config);
  deloc::SphereOperatorFamily family(g, max_n);
  const auto result =
      fit ? deloc::fit_condition(family, p)
          : deloc::fit_condition(family, p, C.value_or(1.0), alpha.value_or(0.5));
  nlohmann::json j;
  j["schema"] = deloc::kSchemaVersion;
  j["config"] = config;
  j["condition"] = deloc::to_json(result);
  emit(out, deloc::dump_json(j));
  return result.no_decay ? kExitAnalysisFailure : kExitPass;
}

int run_spectrum(const GraphSource& source, const std::string& out) {
  nlohmann::json config{{"command", "spectrum"}};
  const auto g = source.load(&config);
  const auto es = deloc::eigensystem(g);
  nlohmann::json j;
  j["schema"] = deloc::kSchemaVersion;
  j["config"] = config;
  j["eigenvalues"] = std::vector<double>(
      es.eigenvalues.data(), es.eigenvalues.data() + es.size());
  std::vector<bool> tempered;
  for (const auto& p : es.points) tempered.push_back(p.tempered);
  j["tempered"] = tempered;
  j["max_residual"] = es.max_residual();
  j["max_gram_error"] = es.max_gram_error();
  emit(out, deloc::dump_json(j));
  const bool ok = es.max_residual() <= 1e-8 && es.max_gram_error() <= 1e-8;
  return ok ? kExitPass : kExitAnalysisFailure;
}

int run_kernel(double theta0, double epsilon, long long N,
               const std::string& out) {
  const auto recipe = deloc::make_kernel_recipe(theta0, epsilon, N);
  double grid_min = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double theta = std::numbers::pi * i / 10000;
    grid_min = std::min(grid_min, deloc::fejer_transform(recipe, theta));
  }
  const double at_target = deloc::fejer_transform(recipe, theta0);
  nlohmann::json j;
  j["schema"] = deloc::kSchemaVersion;
  j["config"] = {{"command", "kernel"},
                 {"theta0", theta0},
                 {"epsilon", epsilon},
                 {"N", N}};
  j["recipe"] = deloc::to_json(recipe);
  j["transform_at_theta0"] = at_target;
  j["grid_min"] = grid_min;
  j["amplification_target"] = 1.0 / epsilon;
  emit(out, deloc::dump_json(j));
  const bool ok = grid_min >= -1.0 - 1e-12 && at_target > 1.0 / epsilon;
  return ok ? kExitPass : kExitAnalysisFailure;
}

int run_oracle(const std::vector<std::string>& tokens, const std::string& out) {
  const KvArgs kv = parse_kv(tokens);
  const int d = static_cast<int>(kv.integer("d"));
  const int n = static_cast<int>(kv.integer("n"));
  const int depth = static_cast<int>(kv.integer("depth", n + 1));
  const auto profile = deloc::chebyshev_delta_tree_profile(d, n, depth);

  std::string table = "dist closed_form tree_value abs_diff\n";
  double worst = 0.0;
  for (int dist = 0; dist <= depth; ++dist) {
    const double closed =
        dist <= n ? deloc::chebyshev_delta_value(d, n, dist) : 0.0;
    const double tree = profile.value_at_distance[dist];
    const double diff = std::abs(closed - tree);
    worst = std::max(worst, diff);
    char line[128];
    std::snprintf(line, sizeof(line), "%4d %.17g %.17g %.3g\n", dist, closed,
                  tree, diff);
    table += line;
  }
  char tail[160];
  std::snprintf(tail, sizeof(tail),
                "max_abs_diff %.3g  radial_deviation %.3g  vertices %lld%s\n",
                worst, profile.max_radial_deviation,
                static_cast<long long>(profile.vertex_count),
                profile.full_tree ? "" : " (distance-class recurrence)");
  table += tail;
  emit(out, table);
  return worst <= 1e-12 ? kExitPass : kExitAnalysisFailure;
}

deloc::SurveyConfig survey_config(double epsilon, double p,
                                  std::optional<double> C,
                                  std::optional<double> alpha, bool fit,
                                  std::optional<long long> recipe_N,
                                  int scan_limit, int max_n) {
  deloc::SurveyConfig config;
  config.epsilon = epsilon;
  config.p = p;
  config.C = C;
  config.alpha = alpha;
  config.fit_c_alpha = fit;
  config.recipe_N = recipe_N;
  config.girth_scan_limit = scan_limit;
  config.condition_max_n = max_n;
  config.threads = thread_count_from_env();
  return config;
}

nlohmann::json survey_json(const deloc::DelocalizationReport& report,
                           const nlohmann::json& config) {
  nlohmann::json j = deloc::to_json(report);
  j["config"] = config;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral delocalization toolkit for (d+1)-regular graphs"};
  app.require_subcommand(1);

  std::string out_path;
  std::string csv_path;
  GraphSource source;
  std::vector<std::string> kv_tokens;
  int scan_limit = 10;
  int max_n = 8;
  double epsilon = 0.25;
  double p = 1.0;
  double theta0 = 0.0;
  long long kernel_N = 4096;
  std::optional<double> opt_C, opt_alpha;
  std::optional<long long> opt_recipe_N;
  bool fit = false;
  int j_index = -1;

  auto add_graph_opts = [&](CLI::App* cmd) {
    cmd->add_option("--graph", source.path, "edge-list file");
    cmd->add_option("--gen", source.gen_spec, "generator spec n=..,d=..,seed=..");
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "output path (default stdout)");
  };

  CLI::App* gen = app.add_subcommand("gen", "generate a random regular graph");
  gen->add_option("params", kv_tokens, "n=.. d=.. [seed=..]");
  add_out(gen);

  CLI::App* girth = app.add_subcommand("girth", "girth and short-cycle scan");
  add_graph_opts(girth);
  girth->add_option("--scan-limit", scan_limit, "cycle length cap");
  add_out(girth);

  CLI::App* condition =
      app.add_subcommand("condition", "sphere-operator norm decay certificate");
  add_graph_opts(condition);
  condition->add_option("--max-n", max_n, "largest sphere radius");
  condition->add_option("--p", p, "exponent in [1, 2]");
  condition->add_option("--C", [&](const auto& vals) {
    opt_C = std::stod(vals[0]); return true; }, "norm constant override");
  condition->add_option("--alpha", [&](const auto& vals) {
    opt_alpha = std::stod(vals[0]); return true; }, "decay rate override");
  condition->add_flag("--fit", fit, "least-squares fit of C and alpha");
  add_out(condition);

  CLI::App* spectrum = app.add_subcommand("spectrum", "dense eigendecomposition");
  add_graph_opts(spectrum);
  add_out(spectrum);

  CLI::App* kernel =
      app.add_subcommand("kernel", "amplification kernel recipe diagnostics");
  kernel->add_option("--theta0", theta0, "target spectral angle in [0, pi]");
  kernel->add_option("--epsilon", epsilon, "mass threshold in (0, 1)");
  kernel->add_option("--N", kernel_N, "admissible radius");
  add_out(kernel);

  CLI::App* verify =
      app.add_subcommand("verify", "mass bound chain for eigenfunctions");
  add_graph_opts(verify);
  verify->add_option("--epsilon", epsilon, "mass threshold");
  verify->add_option("--p", p, "exponent in [1, 2)");
  verify->add_option("--j", j_index, "single eigenfunction index (default all)");

  CLI::App* survey = app.add_subcommand("survey", "full delocalization report");
  add_graph_opts(survey);
  survey->add_option("--epsilon", epsilon, "mass threshold");
  survey->add_option("--p", p, "exponent in [1, 2)");
  survey->add_option("--C", [&](const auto& vals) {
    opt_C = std::stod(vals[0]); return true; }, "norm constant override");
  survey->add_option("--alpha", [&](const auto& vals) {
    opt_alpha = std::stod(vals[0]); return true; }, "decay rate override");
  survey->add_option("--recipe-N", [&](const auto& vals) {
    opt_recipe_N = std::stoll(vals[0]); return true; },
    "radius the kernels are sized for (default ceil(256/eps^2))");
  survey->add_option("--scan-limit", scan_limit, "girth scan cap");
  survey->add_option("--max-n", max_n, "sphere radius for the certificate");
  add_out(survey);
  survey->add_option("--csv", csv_path, "also write the CSV table");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "closed-form delta profile vs truncated-tree evaluation");
  oracle->add_option("params", kv_tokens, "d=.. n=.. [depth=..]");
  add_out(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (gen->parsed()) return run_gen(kv_tokens, out_path);
    if (girth->parsed()) return run_girth(source, scan_limit, out_path);
    if (condition->parsed())
      return run_condition(source, max_n, p, opt_C, opt_alpha, fit, out_path);
    if (spectrum->parsed()) return run_spectrum(source, out_path);
    if (kernel->parsed())
      return run_kernel(theta0, epsilon, kernel_N, out_path);
    if (oracle->parsed()) return run_oracle(kv_tokens, out_path);

    if (verify->parsed() || survey->parsed()) {
      nlohmann::json config{{"command", survey->parsed() ? "survey" : "verify"},
                            {"epsilon", epsilon},
                            {"p", p}};
      const auto g = source.load(&config);
      auto cfg = survey_config(epsilon, p, opt_C, opt_alpha, fit, opt_recipe_N,
                               scan_limit, max_n);
      const auto report = deloc::full_survey(g, cfg);
      if (opt_recipe_N) config["recipe_N"] = *opt_recipe_N;

      if (survey->parsed()) {
        emit(out_path, deloc::dump_json(survey_json(report, config)));
        if (!csv_path.empty())
          deloc::write_text_file(csv_path, deloc::report_csv(report));
        return report.all_pass ? kExitPass : kExitAnalysisFailure;
      }
      bool all = true;
      for (const auto& row : report.rows) {
        if (j_index >= 0 && row.j != j_index) continue;
        all = all && row.pass;
        std::printf("[%s] j=%d lambda=%.12g %s E_min=%d lhs=%.6g upper=%.6g\n",
                    row.pass ? "PASS" : "FAIL", row.j, row.lambda,
                    row.tempered ? "tempered" : "untempered", row.e_min,
                    row.lhs8, row.rhs5);
      }
      return all ? kExitPass : kExitAnalysisFailure;
    }
  } catch (const deloc::error& e) {
    std::cerr << deloc::errc_name(e.code()) << ": " << e.what() << "\n";
    return deloc::is_usage_error(e.code()) ? kExitUsage : kExitAnalysisFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAnalysisFailure;
  }
  return kExitUsage;
}
