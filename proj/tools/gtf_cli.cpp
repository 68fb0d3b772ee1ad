// gtf: command line front end for the solvers and experiment protocols.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gtf/anneal.hpp"
#include "gtf/error.hpp"
#include "gtf/experiments.hpp"
#include "gtf/graph.hpp"
#include "gtf/io.hpp"
#include "gtf/kernels.hpp"
#include "gtf/map_ssl.hpp"
#include "gtf/spectral.hpp"

namespace {

using gtf::Json;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string method;
  bool trace = false;
  bool header = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_method) {
  cmd->add_option("--config", c.config, "JSON config file (flags override its keys)");
  cmd->add_option("--seed", c.seed, "RNG seed");
  cmd->add_option("--out", c.out, "Output JSON path (stdout when omitted)");
  if (with_method) {
    cmd->add_option("--method", c.method, "Solver")->check(CLI::IsMember({"spectral", "sa"}));
  }
}

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  try {
    Json j = Json::parse(gtf::read_text_file(path));
    if (!j.is_object()) gtf::fail(gtf::ErrorCode::ConfigError, path + ": top level must be an object");
    return j;
  } catch (const Json::parse_error& e) {
    gtf::fail(gtf::ErrorCode::ConfigError, path + ": " + e.what());
  }
}

template <class T>
T pick(const Json& cfg, const char* key, T fallback) {
  if (!cfg.contains(key)) return fallback;
  try {
    return cfg.at(key).get<T>();
  } catch (const Json::exception&) {
    gtf::fail(gtf::ErrorCode::ConfigError, std::string("config key '") + key + "' has the wrong type");
  }
}

void emit(const Json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    gtf::write_text_file(out, text);
  }
}

std::string sibling(const std::string& out, const std::string& suffix) {
  return (out.empty() ? std::string("gtf") : out) + suffix;
}

gtf::Schedule schedule_from(const Json& cfg) {
  gtf::Schedule s;
  s.t_start = pick(cfg, "t_start", s.t_start);
  s.t_end = pick(cfg, "t_end", s.t_end);
  s.cool = pick(cfg, "cool", s.cool);
  s.sweeps_per_temp = pick(cfg, "sweeps", s.sweeps_per_temp);
  return s;
}

gtf::SpectralOptions spectral_from(const Json& cfg, std::uint64_t seed) {
  gtf::SpectralOptions o;
  o.restarts = pick(cfg, "restarts", o.restarts);
  o.max_iter = pick(cfg, "max_iter", o.max_iter);
  o.reweight_passes = pick(cfg, "reweight_passes", o.reweight_passes);
  o.seed = seed;
  return o;
}

struct SolveGtf {
  Common common;
  std::string graph;
  std::string signal;
  std::optional<double> lambda;
  std::optional<int> k_max;
  std::optional<int> k;
};

int run_solve_gtf(const SolveGtf& a) {
  const Json cfg = load_config(a.common.config);
  const double lambda = a.lambda.value_or(pick(cfg, "lambda", 0.1));
  const int k_max = a.k_max.value_or(pick(cfg, "k_max", 8));
  const std::uint64_t seed = a.common.seed.value_or(pick<std::uint64_t>(cfg, "seed", 0));
  const std::string method = a.common.method.empty() ? pick<std::string>(cfg, "method", "spectral") : a.common.method;

  const gtf::Matrix y = gtf::read_csv_matrix(a.signal, a.common.header);
  const gtf::EdgeListFile file = gtf::read_edge_list(a.graph, static_cast<int>(y.rows()));
  const gtf::Graph g(file.n, file.edges);

  Json result;
  if (method == "sa") {
    gtf::AnnealOptions opts;
    opts.schedule = schedule_from(cfg);
    opts.restarts = pick(cfg, "sa_restarts", opts.restarts);
    opts.seed = seed;
    opts.record_trace = a.common.trace;
    const gtf::AnnealResult r = gtf::anneal(y, g, lambda, a.k.value_or(k_max), opts);
    result = gtf::solution_json(r.solution);
    if (a.common.trace) gtf::write_text_file(sibling(a.common.out, ".trace.csv"), gtf::format_trace_csv(r.trace));
  } else {
    const gtf::SpectralOptions opts = spectral_from(cfg, seed);
    if (a.k) {
      result = gtf::solution_json(gtf::solve_p2_fixed_k(y, g, lambda, *a.k, opts));
    } else {
      const gtf::ScreenResult r = gtf::solve_p2_screen(y, g, lambda, k_max, opts);
      result = gtf::solution_json(r.best);
      if (a.common.trace) {
        std::string csv = "k,p1_objective,q,effective_k\n";
        for (std::size_t i = 0; i < r.p1_by_k.size(); ++i) {
          csv += std::to_string(i + 1) + "," + Json(r.p1_by_k[i]).dump() + "," + Json(r.q_by_k[i]).dump() + "," +
                 std::to_string(r.effective_k_by_k[i]) + "\n";
        }
        gtf::write_text_file(sibling(a.common.out, ".by_k.csv"), csv);
      }
    }
  }
  emit(result, a.common.out);
  return 0;
}

struct SolveMap {
  Common common;
  std::string graph;
  std::string features;
  std::string labels;
  std::string prior;
  std::optional<int> knn;
  std::optional<double> lambda;
  std::optional<double> epsilon;
  std::optional<int> k_max;
  std::optional<int> classes;
};

int run_solve_map(const SolveMap& a) {
  const Json cfg = load_config(a.common.config);
  const double lambda = a.lambda.value_or(pick(cfg, "lambda", 1.0));
  const double epsilon = a.epsilon.value_or(pick(cfg, "epsilon", 0.01));
  const int k_max = a.k_max.value_or(pick(cfg, "k_max", 6));
  const std::uint64_t seed = a.common.seed.value_or(pick<std::uint64_t>(cfg, "seed", 0));
  const std::string method = a.common.method.empty() ? pick<std::string>(cfg, "method", "spectral") : a.common.method;

  const std::vector<int> labels = gtf::read_labels_csv(a.labels, a.common.header);
  const int n = static_cast<int>(labels.size());
  std::optional<gtf::Graph> graph;
  if (!a.graph.empty()) {
    const gtf::EdgeListFile file = gtf::read_edge_list(a.graph, n);
    graph.emplace(file.n, file.edges);
  } else if (!a.features.empty()) {
    const gtf::Matrix x = gtf::read_csv_matrix(a.features, a.common.header);
    if (x.rows() != n) gtf::fail(gtf::ErrorCode::DimensionMismatch, "features and labels differ in length");
    graph.emplace(gtf::knn_graph(x, a.knn.value_or(pick(cfg, "knn", 5))).graph);
  } else {
    gtf::fail(gtf::ErrorCode::ConfigError, "solve-map needs --graph or --features");
  }
  int classes = a.classes.value_or(pick(cfg, "classes", 0));
  if (classes == 0) {
    for (int l : labels) classes = std::max(classes, l + 1);
  }
  std::optional<gtf::Matrix> prior;
  if (!a.prior.empty()) prior = gtf::read_csv_matrix(a.prior, a.common.header);
  const gtf::MapInstance inst = gtf::MapInstance::from_labels(*graph, labels, classes, lambda, epsilon, prior);

  gtf::MapOptions opts;
  opts.spectral = spectral_from(cfg, seed);
  opts.anneal.schedule = schedule_from(cfg);
  opts.anneal.restarts = pick(cfg, "sa_restarts", opts.anneal.restarts);
  opts.anneal.seed = seed;
  const gtf::MapSolution sol =
      gtf::solve_map(inst, k_max, method == "sa" ? gtf::MapMethod::sa : gtf::MapMethod::spectral, opts);
  emit(gtf::map_solution_json(sol, classes), a.common.out);
  return 0;
}

struct ExperimentArgs {
  Common common;
  std::string graph;
  std::string signal;
  std::string features;
  std::string labels;
  std::string curves_dir;
  bool repair = false;
};

int run_experiment_cmd(const std::string& name, const ExperimentArgs& a) {
  Json cfg = load_config(a.common.config);
  if (a.common.seed) cfg["seed"] = *a.common.seed;
  if (!a.common.method.empty()) cfg["method"] = a.common.method;
  if (!a.graph.empty()) cfg["graph"] = a.graph;
  if (!a.signal.empty()) cfg["signal"] = a.signal;
  if (!a.features.empty()) cfg["features"] = a.features;
  if (!a.labels.empty()) cfg["labels"] = a.labels;
  if (a.repair) cfg["repair"] = true;
  if (a.common.header) cfg["header"] = true;

  const gtf::ExperimentReport report = gtf::run_experiment(name, cfg);
  const Json j = report.to_json();
  gtf::validate_report(j);
  emit(j, a.common.out);
  if (!a.curves_dir.empty()) {
    std::filesystem::create_directories(a.curves_dir);
    for (const auto& [curve, points] : report.curves) {
      std::string csv = "x,y\n";
      for (const auto& [x, y] : points) csv += Json(x).dump() + "," + Json(y).dump() + "\n";
      std::string file = curve;
      for (char& ch : file) {
        if (ch == '@' || ch == '=' || ch == ',' || ch == '/') ch = '_';
      }
      gtf::write_text_file((std::filesystem::path(a.curves_dir) / (name + "." + file + ".csv")).string(), csv);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Piecewise-constant graph signal estimation with an l2,0 trend filtering penalty"};
  app.require_subcommand(1);
  std::string isa;
  app.add_option("--isa", isa, "Kernel variant (scalar, avx2); default is the best supported")
      ->check(CLI::IsMember({"scalar", "avx2"}));

  SolveGtf gtf_args;
  auto* solve_gtf = app.add_subcommand("solve-gtf", "Estimate a piecewise-constant signal on a graph");
  add_common(solve_gtf, gtf_args.common, true);
  solve_gtf->add_option("--graph", gtf_args.graph, "Edge list")->required();
  solve_gtf->add_option("--signal", gtf_args.signal, "Signal CSV, n rows by d columns")->required();
  solve_gtf->add_option("--lambda", gtf_args.lambda, "Penalty weight");
  solve_gtf->add_option("--k-max", gtf_args.k_max, "Largest cluster count screened");
  solve_gtf->add_option("--k", gtf_args.k, "Solve for a fixed cluster count instead of screening");
  solve_gtf->add_flag("--trace", gtf_args.common.trace, "Write the energy trace (sa) or per-k objectives (spectral) as CSV");
  solve_gtf->add_flag("--header", gtf_args.common.header, "Skip the first CSV row");

  SolveMap map_args;
  auto* solve_map = app.add_subcommand("solve-map", "Semi-supervised classification on a graph");
  add_common(solve_map, map_args.common, true);
  solve_map->add_option("--labels", map_args.labels, "Label CSV, -1 for unlabelled")->required();
  solve_map->add_option("--graph", map_args.graph, "Edge list");
  solve_map->add_option("--features", map_args.features, "Feature CSV used to build a kNN graph");
  solve_map->add_option("--knn", map_args.knn, "Neighbours per node for --features (default 5)");
  solve_map->add_option("--prior", map_args.prior, "Prior CSV, n rows by K columns (default 1/K)");
  solve_map->add_option("--lambda", map_args.lambda, "Penalty weight");
  solve_map->add_option("--epsilon", map_args.epsilon, "Prior weight (default 0.01)");
  solve_map->add_option("--k-max", map_args.k_max, "Largest cluster count");
  solve_map->add_option("--classes", map_args.classes, "Number of classes (default max label + 1)");
  solve_map->add_flag("--header", map_args.common.header, "Skip the first CSV row");

  ExperimentArgs exp_args;
  std::string experiment;
  const auto add_experiment = [&](const char* name, const char* help, bool method) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd, exp_args.common, method);
    cmd->add_option("--curves-dir", exp_args.curves_dir, "Also write each curve as CSV into this directory");
    cmd->callback([&experiment, name] { experiment = name; });
    return cmd;
  };
  auto* support = add_experiment("support-recovery", "ROC of boundary-edge recovery on a planted graph", false);
  support->add_option("--graph", exp_args.graph, "Edge list to use instead of the planted graph");
  support->add_option("--signal", exp_args.signal, "Clean signal CSV for --graph");
  support->add_flag("--repair", exp_args.repair, "Connect a disconnected --graph with random edges");
  support->add_flag("--header", exp_args.common.header, "Skip the first CSV row");
  add_experiment("denoise", "Input versus reconstructed SNR sweep", true);
  add_experiment("timing", "Solver wall time across edge densities", true);
  auto* ssl = add_experiment("ssl", "Semi-supervised misclassification over random label masks", true);
  ssl->add_option("--features", exp_args.features, "Feature CSV instead of synthetic blobs");
  ssl->add_option("--labels", exp_args.labels, "Ground-truth class CSV for --features");
  ssl->add_flag("--header", exp_args.common.header, "Skip the first CSV row");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!isa.empty()) gtf::kernels::set_active(gtf::kernels::parse_isa(isa));
    if (solve_gtf->parsed()) return run_solve_gtf(gtf_args);
    if (solve_map->parsed()) return run_solve_map(map_args);
    return run_experiment_cmd(experiment, exp_args);
  } catch (const gtf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
