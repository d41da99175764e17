#include "parsmo/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "parsmo/dataset.hpp"
#include "parsmo/metrics.hpp"
#include "parsmo/model.hpp"
#include "parsmo/solver.hpp"

namespace parsmo::cli {

namespace {

struct ProblemOptions {
  std::string data;
  std::string kernel = "gaussian";
  std::optional<double> gamma;
  double C = 1.0;
  std::optional<std::size_t> subset;
};

struct SolverOptions {
  std::size_t q = 1;
  std::string variant = "parsmo1";
  std::size_t block_size = 2;
  std::string stepsize = "exact";
  double theta = 1e-3;
  double backtrack = 0.5;
  double xi = 1.0;
  std::optional<double> tau;
  double eta = 1e-3;
  std::optional<double> index_eps;
  double descent_eps = 1e-2;
  std::optional<double> inner_eta;
  std::string descent_period = "0";
  std::size_t cache_cols = 500;
  std::size_t max_iter = 10'000'000;
  std::size_t threads = 0;
  std::uint64_t seed = 0;
  std::string deterministic = "on";
};

void add_problem_options(CLI::App* app, ProblemOptions& o) {
  app->add_option("--data", o.data, "LIBSVM training file")->required();
  app->add_option("--kernel", o.kernel, "linear or gaussian")
      ->check(CLI::IsMember({"linear", "gaussian"}));
  app->add_option("--gamma", o.gamma, "gaussian width (default 1/#features)");
  app->add_option("--C", o.C, "box bound");
  app->add_option("--subset", o.subset,
                  "train on a seeded random subset of this many samples");
}

void add_solver_options(CLI::App* app, SolverOptions& o, bool full) {
  app->add_option("--cache-cols", o.cache_cols, "kernel column cache capacity");
  app->add_option("--max-iter", o.max_iter, "iteration limit");
  app->add_option("--threads", o.threads, "worker threads (0: all cores)");
  app->add_option("--seed", o.seed, "seed for subsets and partitions");
  app->add_option("--index-eps", o.index_eps,
                  "index-set perturbation (default 1e-12*C)");
  if (!full) return;
  app->add_option("--eta", o.eta, "stopping tolerance on m - M");
  app->add_option("--q", o.q, "pairs or blocks per iteration");
  app->add_option("--variant", o.variant, "parsmo1, parsmo2 or blocks")
      ->check(CLI::IsMember({"parsmo1", "parsmo2", "blocks"}));
  app->add_option("--block-size", o.block_size, "block size for --variant blocks");
  app->add_option("--stepsize", o.stepsize, "exact, armijo, diminishing or unit")
      ->check(CLI::IsMember({"exact", "armijo", "diminishing", "unit"}));
  app->add_option("--theta", o.theta, "Armijo sufficient-decrease constant");
  app->add_option("--backtrack", o.backtrack, "Armijo backtracking factor");
  app->add_option("--xi", o.xi, "diminishing rule exponent");
  app->add_option("--tau", o.tau, "proximal weight for block subproblems");
  app->add_option("--descent-eps", o.descent_eps, "descent-block constant");
  app->add_option("--inner-eta", o.inner_eta, "block solver tolerance (default eta/10)");
  app->add_option("--descent-period", o.descent_period,
                  "max non-descent iterations before forcing the MVP, or 'none'");
  app->add_option("--deterministic", o.deterministic, "on or off")
      ->check(CLI::IsMember({"on", "off"}));
}

std::shared_ptr<const Dataset> load_data(const ProblemOptions& o,
                                         std::uint64_t seed) {
  auto ds = load_libsvm(o.data);
  if (o.subset) ds = take_subset(ds, *o.subset, seed);
  return std::make_shared<const Dataset>(std::move(ds));
}

Problem make_problem(const ProblemOptions& o, std::shared_ptr<const Dataset> ds) {
  KernelSpec spec;
  spec.kind = parse_kernel_kind(o.kernel);
  spec.gamma = spec.kind == KernelKind::gaussian
                   ? o.gamma.value_or(1.0 / static_cast<double>(ds->dim()))
                   : 0.0;
  return Problem(std::move(ds), spec, o.C);
}

SolverConfig make_config(const SolverOptions& o) {
  SolverConfig c;
  c.q = o.q;
  c.variant = parse_variant(o.variant);
  c.block_size = o.block_size;
  c.eta = o.eta;
  c.index_eps = o.index_eps;
  c.descent_eps = o.descent_eps;
  c.tau = o.tau;
  c.inner_eta = o.inner_eta;
  c.max_iter = o.max_iter;
  if (o.descent_period == "none") {
    c.descent_period.reset();
  } else {
    std::size_t L = 0;
    auto [p, ec] = std::from_chars(o.descent_period.data(),
                                   o.descent_period.data() + o.descent_period.size(), L);
    if (ec != std::errc() || p != o.descent_period.data() + o.descent_period.size())
      throw std::invalid_argument("--descent-period must be an integer or 'none'");
    c.descent_period = L;
  }
  c.stepsize.kind = parse_stepsize_kind(o.stepsize);
  c.stepsize.theta = o.theta;
  c.stepsize.backtrack = o.backtrack;
  c.stepsize.xi = o.xi;
  c.cache_capacity = o.cache_cols;
  c.seed = o.seed;
  c.threads = o.threads;
  c.deterministic = o.deterministic == "on";
  c.validate();
  return c;
}

int cmd_train(const ProblemOptions& po, const SolverOptions& so,
              const std::optional<std::string>& fstar_spec,
              const std::optional<std::string>& metrics_out,
              const std::optional<std::string>& model_out, std::ostream& out) {
  auto config = make_config(so);
  auto problem = make_problem(po, load_data(po, so.seed));
  std::optional<double> fstar;
  if (fstar_spec) fstar = resolve_fstar(*fstar_spec);

  // Wall-clock time cannot be reproduced byte for byte.
  MetricsLog log(config.q, fstar, !config.deterministic);
  log.start();
  auto result = train(problem, config,
                      [&](const IterationReport& r) { log.record(r); });

  if (metrics_out) write_metrics(*metrics_out, log.records());
  if (model_out)
    write_model(*model_out, build_model(problem, result.state, result.final_view));

  const auto iterations = result.reports.size();
  out << "samples          " << problem.size() << " (" << problem.data().dim()
      << " features)\n"
      << "kernel           " << to_string(problem.kernel().kind);
  if (problem.kernel().kind == KernelKind::gaussian)
    out << " gamma=" << format_double(problem.kernel().gamma);
  out << "\n"
      << "variant          " << to_string(config.variant) << " q=" << config.q
      << " stepsize=" << to_string(config.stepsize.kind) << "\n"
      << "stop             " << to_string(result.reason) << "\n"
      << "iterations       " << iterations << "\n"
      << "objective        " << format_double(result.state.fval) << "\n"
      << "violation        " << format_double(result.final_view.violation()) << "\n";
  if (fstar)
    out << (*fstar == 0.0 ? "abs error        " : "relative error   ")
        << format_double(*error_vs_reference(result.state.fval, fstar)) << "\n";
  out << "kernel columns   " << result.columns_computed << " (per process "
      << result.columns_computed / config.q << " remainder "
      << result.columns_computed % config.q << ")\n"
      << "cache hits       " << result.cache_hits << "\n"
      << "wall time        " << format_double(result.seconds) << " s\n";
  return 0;
}

int cmd_fstar(const ProblemOptions& po, SolverOptions so, double eta,
              const std::optional<std::string>& out_path, std::ostream& out,
              std::ostream& err) {
  so.q = 1;
  so.variant = "parsmo1";
  so.stepsize = "exact";
  so.eta = eta;
  auto config = make_config(so);
  auto problem = make_problem(po, load_data(po, so.seed));
  auto result = train(problem, config);
  const auto value = format_double(result.state.fval);
  if (out_path) {
    std::ofstream f(*out_path);
    if (!f) throw std::runtime_error("cannot write " + *out_path);
    f << value << '\n';
  }
  out << value << '\n';
  if (result.reason == StopReason::max_iter) {
    err << "warning: fstar run hit --max-iter before converging (violation "
              << format_double(result.final_view.violation()) << ")\n";
    return 2;
  }
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& data_path,
                const std::optional<std::string>& predictions_out,
                std::ostream& out) {
  auto model = read_model(model_path);
  auto data = load_libsvm(data_path);
  auto p = predict(model, data);
  if (predictions_out) {
    std::ofstream f(*predictions_out);
    if (!f) throw std::runtime_error("cannot write " + *predictions_out);
    for (int label : p.labels) f << (label > 0 ? "+1" : "-1") << '\n';
  }
  out << "accuracy " << format_double(p.accuracy) << " (" << data.size()
      << " samples)\n";
  return 0;
}

// Inserts `--key value` pairs from every --config file directly after the
// subcommand name, so that flags given on the command line win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> extra;
  for (std::size_t a = 1; a < args.size(); ++a) {
    std::string path;
    if (args[a] == "--config" && a + 1 < args.size())
      path = args[a + 1];
    else if (args[a].rfind("--config=", 0) == 0)
      path = args[a].substr(9);
    if (!path.empty()) {
      auto kv = config_file_args(path);
      extra.insert(extra.end(), kv.begin(), kv.end());
    }
  }
  if (extra.empty() || args.size() < 2) return args;
  std::vector<std::string> out(args.begin(), args.begin() + 2);
  out.insert(out.end(), extra.begin(), extra.end());
  out.insert(out.end(), args.begin() + 2, args.end());
  return out;
}

}  // namespace

std::vector<std::string> config_file_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::vector<std::string> out;
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key=value");
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) != 0) key = "--" + key;
    out.push_back(key);
    out.push_back(value);
  }
  return out;
}

double resolve_fstar(const std::string& spec) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(spec.data(), spec.data() + spec.size(), v);
  if (ec == std::errc() && p == spec.data() + spec.size()) return v;
  std::ifstream in(spec);
  if (!in) throw std::runtime_error("--fstar: '" + spec + "' is neither a number nor a readable file");
  std::string tok;
  in >> tok;
  auto [q, ec2] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec2 != std::errc() || q != tok.data() + tok.size())
    throw std::runtime_error("--fstar: no number in " + spec);
  return v;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Parallel SMO-type decomposition for the dual SVM problem", "parsmo"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  ProblemOptions train_po, fstar_po;
  SolverOptions train_so, fstar_so;
  std::optional<std::string> fstar_spec, metrics_out, model_out, fstar_out;
  std::string config_path;

  auto* train_cmd = app.add_subcommand("train", "train and write metrics/model");
  add_problem_options(train_cmd, train_po);
  add_solver_options(train_cmd, train_so, true);
  train_cmd->add_option("--fstar", fstar_spec, "reference optimum: number or file");
  train_cmd->add_option("--metrics-out", metrics_out, "per-iteration CSV");
  train_cmd->add_option("--model-out", model_out, "model file");
  train_cmd->add_option("--config", config_path, "key=value defaults file");

  double fstar_eta = 1e-10;
  auto* fstar_cmd = app.add_subcommand("fstar", "compute a tight reference optimum");
  add_problem_options(fstar_cmd, fstar_po);
  add_solver_options(fstar_cmd, fstar_so, false);
  fstar_so.max_iter = 1'000'000'000;
  fstar_cmd->add_option("--eta", fstar_eta, "stopping tolerance (default 1e-10)");
  fstar_cmd->add_option("--out", fstar_out, "write the value to this file");
  fstar_cmd->add_option("--config", config_path, "key=value defaults file");

  std::string model_path, predict_data;
  std::optional<std::string> predictions_out;
  auto* predict_cmd = app.add_subcommand("predict", "evaluate a model on data");
  predict_cmd->add_option("--model", model_path, "model file")->required();
  predict_cmd->add_option("--data", predict_data, "LIBSVM file")->required();
  predict_cmd->add_option("--predictions-out", predictions_out, "one label per line");

  try {
    auto args = expand_config(raw_args);
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*train_cmd)
      return cmd_train(train_po, train_so, fstar_spec, metrics_out, model_out, out);
    if (*fstar_cmd) return cmd_fstar(fstar_po, fstar_so, fstar_eta, fstar_out, out, err);
    if (*predict_cmd)
      return cmd_predict(model_path, predict_data, predictions_out, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace parsmo::cli
