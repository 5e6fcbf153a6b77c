#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "varsel/criteria.hpp"
#include "varsel/crossval.hpp"
#include "varsel/csv.hpp"
#include "varsel/dataset.hpp"
#include "varsel/errors.hpp"
#include "varsel/lars.hpp"
#include "varsel/manifest.hpp"
#include "varsel/ortho_sim.hpp"
#include "varsel/standardize.hpp"
#include "varsel/stepwise.hpp"
#include "varsel/version.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitUnknownColumn = 4;
constexpr int kExitZeroVariance = 5;
constexpr int kExitConfig = 6;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct DataArgs {
  std::string data;
  std::string response = "y";
  std::vector<std::string> binary;
  bool binary_given = false;
  std::string expand = "none";
  int spurious = 0;
};

// The distributed diabetes file marks sex by convention; when the user does
// not pass --binary, that default is applied only if the column exists.
std::vector<std::string> effective_binary(const DataArgs& args,
                                          const std::string& path,
                                          const std::string& response) {
  if (args.binary_given) return args.binary;
  std::ifstream probe(path);
  std::string header;
  if (!probe || !std::getline(probe, header)) return {};
  std::vector<std::string> out;
  std::stringstream ss(header);
  std::string name;
  while (std::getline(ss, name, ',')) {
    while (!name.empty() && (name.back() == '\r' || name.back() == ' '))
      name.pop_back();
    if (name == "sex" && name != response) out.push_back(name);
  }
  return out;
}

varsel::Dataset load_and_prepare(const DataArgs& args, std::uint64_t seed,
                                 std::vector<std::string>& binary_used) {
  binary_used = effective_binary(args, args.data, args.response);
  varsel::Dataset d = varsel::load_csv(args.data, args.response, binary_used);
  if (args.spurious > 0) {
    varsel::Rng rng(seed, varsel::kAugmentStream);
    d = varsel::augment_spurious(d, args.spurious, rng);
  }
  if (args.expand == "quadratic") d = varsel::expand_quadratic(d);
  return d;
}

int resolve_max_steps(int requested, Eigen::Index m) {
  if (requested > 0) return requested;
  return m == 134 ? 64 : 50;
}

varsel::Sigma2Source parse_sigma2(const std::string& s) {
  return s == "largest" ? varsel::Sigma2Source::largest
                        : varsel::Sigma2Source::twostep;
}

ordered_json trace_json(const varsel::CriterionTrace& trace,
                        const std::string& source) {
  ordered_json j;
  j["sigma2"] = trace.sigma2;
  j["sigma2_source"] = source;
  j["values"] = trace.values;
  j["selected_q"] = trace.selected_q;
  return j;
}

int run_fit(const DataArgs& data_args, const std::string& criterion,
            int max_steps_arg, const std::string& cp_sigma2,
            const std::string& sp_sigma2, std::uint64_t seed,
            const std::string& out) {
  std::vector<std::string> binary_used;
  const varsel::Dataset d = load_and_prepare(data_args, seed, binary_used);
  const varsel::StandardizedDataset s = varsel::standardize(d);
  const int m = static_cast<int>(d.m());
  const int max_steps = std::min<int>(
      {resolve_max_steps(max_steps_arg, d.m()), m,
       static_cast<int>(d.n()) - 1});
  if (max_steps_arg > 0 &&
      max_steps_arg > std::min<int>(m, static_cast<int>(d.n()) - 1))
    throw varsel::ConfigError("fit: --max-steps " + std::to_string(max_steps_arg) +
                              " exceeds min(m, n-1)");

  const varsel::LarsPath path = varsel::lars_path(s, max_steps);
  const varsel::StepwiseFit step_fit = varsel::forward_stepwise_ric(s, m);
  const double rss0 = path.rss_sequence().front();
  const auto floor_sigma = [&](double est) {
    return std::max({est, rss0 * 1e-15, 1e-300});
  };
  const double sigma_largest = floor_sigma(
      path.rss_sequence().back() / static_cast<double>(d.n() - 1));
  const double sigma_twostep = floor_sigma(step_fit.sigma2_hat);

  ordered_json j;
  j["command"] = "fit";
  j["n"] = d.n();
  j["m"] = m;
  j["max_steps"] = max_steps;
  j["path_truncated"] = path.truncated;
  j["rss"] = path.rss_sequence();
  ordered_json criteria = ordered_json::object();
  int cp_q = -1, sp_q = -1;
  if (criterion == "cp" || criterion == "both") {
    const double sig = cp_sigma2 == "largest" ? sigma_largest : sigma_twostep;
    const auto trace = varsel::cp_estimated(path.rss_sequence(), d.n(), sig);
    criteria["cp_estimated"] = trace_json(trace, cp_sigma2);
    cp_q = trace.selected_q;
  }
  if (criterion == "sp" || criterion == "both") {
    const double sig = sp_sigma2 == "largest" ? sigma_largest : sigma_twostep;
    const auto trace = varsel::sp(path.rss_sequence(), sig);
    criteria["sp"] = trace_json(trace, sp_sigma2);
    sp_q = trace.selected_q;
  }
  j["criteria"] = criteria;
  ordered_json sw;
  sw["threshold"] = varsel::ric_threshold(m);
  ordered_json names = ordered_json::array();
  for (const int idx : step_fit.selected)
    names.push_back(d.columns[static_cast<std::size_t>(idx)].name);
  sw["selected"] = names;
  sw["selected_idx"] = step_fit.selected;
  sw["entry_tsq"] = step_fit.entry_tsq;
  sw["q"] = step_fit.q;
  sw["sigma2_hat"] = step_fit.sigma2_hat;
  sw["df"] = step_fit.df;
  j["stepwise"] = sw;
  ordered_json sizes;
  if (cp_q >= 0) sizes["lars_cp"] = cp_q;
  if (sp_q >= 0) sizes["lars_sp"] = sp_q;
  sizes["stepwise_ric"] = step_fit.q;
  j["selected_sizes"] = sizes;

  const std::string json_path = out + ".json";
  const std::string manifest_path = out + ".manifest.json";
  varsel::write_text_file(json_path, j.dump(2) + "\n");
  ordered_json config;
  config["data"] = data_args.data;
  config["response"] = data_args.response;
  config["binary"] = binary_used;
  config["expand"] = data_args.expand;
  config["spurious"] = data_args.spurious;
  config["criterion"] = criterion;
  config["max_steps"] = max_steps;
  config["cp_sigma2"] = cp_sigma2;
  config["sp_sigma2"] = sp_sigma2;
  const ordered_json manifest = varsel::make_manifest(
      "fit", config, seed, {data_args.data}, {json_path});
  varsel::write_text_file(manifest_path, manifest.dump(2) + "\n");
  std::cout << "fit: n=" << d.n() << " m=" << m << " stepwise q=" << step_fit.q;
  if (cp_q >= 0) std::cout << " cp q=" << cp_q;
  if (sp_q >= 0) std::cout << " sp q=" << sp_q;
  std::cout << " -> " << json_path << "\n";
  return 0;
}

int run_cv(const DataArgs& data_args, int folds, int reps,
           const std::vector<std::string>& method_names, int max_steps_arg,
           std::uint64_t seed, const std::string& cp_sigma2,
           const std::string& sp_sigma2, int threads, const std::string& out) {
  std::vector<std::string> binary_used;
  const varsel::Dataset d = load_and_prepare(data_args, seed, binary_used);

  varsel::CvConfig cfg;
  cfg.folds = folds;
  cfg.reps = reps;
  cfg.methods.clear();
  for (const auto& name : method_names) {
    if (name == "stepwise_ric") cfg.methods.push_back(varsel::Method::stepwise_ric);
    else if (name == "lars_cp") cfg.methods.push_back(varsel::Method::lars_cp);
    else if (name == "lars_sp") cfg.methods.push_back(varsel::Method::lars_sp);
    else throw varsel::ConfigError("cv: unknown method '" + name + "'");
  }
  cfg.max_steps = resolve_max_steps(max_steps_arg, d.m());
  cfg.spurious_k = data_args.spurious;
  cfg.seed = seed;
  cfg.cp_sigma2 = parse_sigma2(cp_sigma2);
  cfg.sp_sigma2 = parse_sigma2(sp_sigma2);
  cfg.threads = threads;

  const varsel::CvReport report = varsel::reversed_cv(d, cfg);

  const std::string rows_path = out + "_rows.csv";
  const std::string summary_path = out + "_summary.json";
  const std::string manifest_path = out + ".manifest.json";

  std::string csv = "rep,fold,method,q,rmse\n";
  for (const auto& row : report.rows)
    csv += std::to_string(row.rep) + "," + std::to_string(row.fold) + "," +
           varsel::to_string(row.method) + "," + std::to_string(row.q) + "," +
           fmt(row.rmse) + "\n";
  varsel::write_text_file(rows_path, csv);

  ordered_json config;
  config["data"] = data_args.data;
  config["response"] = data_args.response;
  config["binary"] = binary_used;
  config["expand"] = data_args.expand;
  config["spurious"] = data_args.spurious;
  config["folds"] = folds;
  config["reps"] = reps;
  config["methods"] = method_names;
  config["max_steps"] = cfg.max_steps;
  config["cp_sigma2"] = cp_sigma2;
  config["sp_sigma2"] = sp_sigma2;
  config["threads"] = threads;
  config["n"] = d.n();
  config["m"] = d.m();

  ordered_json summary;
  summary["config"] = config;
  ordered_json methods = ordered_json::object();
  for (const auto& name : method_names) {
    ordered_json mj;
    mj["rows"] = reps * folds;
    mj["median_q"] = report.median_q.at(name);
    mj["median_rmse"] = report.median_rmse.at(name);
    methods[name] = mj;
  }
  summary["methods"] = methods;
  varsel::write_text_file(summary_path, summary.dump(2) + "\n");

  const ordered_json manifest = varsel::make_manifest(
      "cv", config, seed, {data_args.data}, {rows_path, summary_path});
  varsel::write_text_file(manifest_path, manifest.dump(2) + "\n");

  std::cout << "cv: n=" << d.n() << " m=" << d.m() << "\n";
  for (const auto& name : method_names)
    std::cout << "  " << name << ": median q=" << report.median_q.at(name)
              << " median rmse=" << fmt(report.median_rmse.at(name)) << "\n";
  std::cout << "-> " << rows_path << ", " << summary_path << "\n";
  return 0;
}

int run_sim(const varsel::SimConfig& cfg, const std::string& mode,
            const std::string& out) {
  const varsel::SimSummary summary = varsel::simulate_orthogonal(cfg);
  const std::string csv_path = out + ".csv";
  const std::string manifest_path = out + ".manifest.json";

  std::string csv = "q,mean,sd,sel_freq\n";
  for (const auto& row : summary.rows)
    csv += std::to_string(row.q) + "," + fmt(row.mean) + "," + fmt(row.sd) +
           "," + fmt(row.sel_freq) + "\n";
  varsel::write_text_file(csv_path, csv);

  ordered_json config;
  config["mode"] = mode;
  config["n_signal"] = cfg.n_signal;
  config["mu"] = cfg.mu;
  config["n_noise"] = cfg.n_noise;
  config["n"] = cfg.n();
  config["reps"] = cfg.reps;
  config["max_q"] = cfg.max_q;
  config["threads"] = cfg.threads;
  const ordered_json manifest =
      varsel::make_manifest("sim " + mode, config, cfg.seed, {}, {csv_path});
  varsel::write_text_file(manifest_path, manifest.dump(2) + "\n");

  int argmin = 0;
  for (std::size_t q = 1; q < summary.rows.size(); ++q)
    if (summary.rows[q].mean < summary.rows[static_cast<std::size_t>(argmin)].mean)
      argmin = static_cast<int>(q);
  std::cout << "sim " << mode << ": reps=" << cfg.reps
            << " argmin q=" << argmin << " -> " << csv_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variable-selection laboratory: LARS and hard-threshold "
               "stepwise regression with C_p / S_p stopping rules"};
  app.require_subcommand(1);

  // fit
  DataArgs fit_data;
  std::string fit_criterion = "both";
  int fit_max_steps = 0;
  std::string fit_cp_sigma2 = "twostep", fit_sp_sigma2 = "twostep";
  std::uint64_t fit_seed = 0;
  std::string fit_out = "fit";
  auto* fit = app.add_subcommand(
      "fit", "LARS path, stepwise fit, and criterion traces on one dataset");
  fit->add_option("--data", fit_data.data, "CSV file with a header row")
      ->required();
  auto* fit_resp = fit->add_option("--response", fit_data.response,
                                   "response column name")->required();
  auto* fit_bin = fit->add_option("--binary", fit_data.binary,
                                  "binary column names (never squared)");
  fit->add_option("--expand", fit_data.expand, "feature expansion")
      ->check(CLI::IsMember({"none", "quadratic"}))
      ->capture_default_str();
  fit->add_option("--spurious", fit_data.spurious,
                  "append this many standard-normal noise predictors")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  fit->add_option("--criterion", fit_criterion, "which criterion traces to emit")
      ->check(CLI::IsMember({"cp", "sp", "both"}))
      ->capture_default_str();
  fit->add_option("--max-steps", fit_max_steps,
                  "path length cap (0 = 50, or 64 when m = 134)")
      ->capture_default_str();
  fit->add_option("--cp-sigma2", fit_cp_sigma2, "variance estimate for C_p")
      ->check(CLI::IsMember({"twostep", "largest"}))
      ->capture_default_str();
  fit->add_option("--sp-sigma2", fit_sp_sigma2, "variance estimate for S_p")
      ->check(CLI::IsMember({"twostep", "largest"}))
      ->capture_default_str();
  fit->add_option("--seed", fit_seed, "RNG seed")->capture_default_str();
  fit->add_option("--out", fit_out, "output file prefix")->capture_default_str();

  // cv
  DataArgs cv_data;
  cv_data.expand = "quadratic";
  int cv_folds = 5, cv_reps = 20, cv_max_steps = 0, cv_threads = 1;
  std::vector<std::string> cv_methods = {"stepwise_ric", "lars_cp", "lars_sp"};
  std::uint64_t cv_seed = 0;
  std::string cv_cp_sigma2 = "twostep", cv_sp_sigma2 = "twostep";
  std::string cv_out = "cv";
  auto* cv = app.add_subcommand(
      "cv", "reversed cross-validation: train on one fold, predict the rest");
  cv->add_option("--data", cv_data.data, "CSV file with a header row")
      ->required();
  cv->add_option("--response", cv_data.response, "response column name")
      ->capture_default_str();
  auto* cv_bin = cv->add_option("--binary", cv_data.binary,
                                "binary column names (never squared)");
  cv->add_option("--expand", cv_data.expand, "feature expansion")
      ->check(CLI::IsMember({"none", "quadratic"}))
      ->capture_default_str();
  cv->add_option("--spurious", cv_data.spurious,
                 "append this many standard-normal noise predictors before expansion")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cv->add_option("--folds", cv_folds, "number of folds")->capture_default_str();
  cv->add_option("--reps", cv_reps, "number of repetitions")
      ->capture_default_str();
  cv->add_option("--methods", cv_methods, "methods to evaluate")
      ->check(CLI::IsMember({"stepwise_ric", "lars_cp", "lars_sp"}));
  cv->add_option("--max-steps", cv_max_steps,
                 "path length cap (0 = 50, or 64 when m = 134)")
      ->capture_default_str();
  cv->add_option("--cp-sigma2", cv_cp_sigma2, "variance estimate for C_p")
      ->check(CLI::IsMember({"twostep", "largest"}))
      ->capture_default_str();
  cv->add_option("--sp-sigma2", cv_sp_sigma2, "variance estimate for S_p")
      ->check(CLI::IsMember({"twostep", "largest"}))
      ->capture_default_str();
  cv->add_option("--seed", cv_seed, "RNG seed")->capture_default_str();
  cv->add_option("--threads", cv_threads, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cv->add_option("--out", cv_out, "output file prefix")->capture_default_str();

  // sim
  auto* sim = app.add_subcommand("sim", "orthogonal-design Monte Carlo");
  sim->require_subcommand(1);
  int null_n = 100, null_reps = 1000, null_max_q = -1, null_threads = 1;
  std::uint64_t null_seed = 0;
  std::string null_out = "sim_null";
  auto* sim_null = sim->add_subcommand(
      "null", "pure-noise samples scored by the known-variance criterion");
  sim_null->add_option("--n", null_n, "observations per replicate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim_null->add_option("--reps", null_reps, "replicates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim_null->add_option("--max-q", null_max_q,
                       "largest model size scored (-1 = min(40, n-1))");
  sim_null->add_option("--seed", null_seed, "RNG seed")->capture_default_str();
  sim_null->add_option("--threads", null_threads, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim_null->add_option("--out", null_out, "output file prefix")
      ->capture_default_str();

  int sig_signal = 5, sig_noise = 95, sig_reps = 1000, sig_max_q = -1,
      sig_threads = 1;
  double sig_mu = 3.0;
  std::uint64_t sig_seed = 0;
  std::string sig_out = "sim_signal";
  auto* sim_signal = sim->add_subcommand(
      "signal", "signal-plus-noise samples scored by the known-variance criterion");
  sim_signal->add_option("--signal", sig_signal, "observations with mean mu")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sim_signal->add_option("--mu", sig_mu, "signal mean")->capture_default_str();
  sim_signal->add_option("--noise", sig_noise, "standard-normal observations")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sim_signal->add_option("--reps", sig_reps, "replicates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim_signal->add_option("--max-q", sig_max_q,
                         "largest model size scored (-1 = min(40, n-1))");
  sim_signal->add_option("--seed", sig_seed, "RNG seed")->capture_default_str();
  sim_signal->add_option("--threads", sig_threads, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim_signal->add_option("--out", sig_out, "output file prefix")
      ->capture_default_str();

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return kExitUsage;
    }

    if (fit->parsed()) {
      fit_data.binary_given = fit_bin->count() > 0;
      (void)fit_resp;
      return run_fit(fit_data, fit_criterion, fit_max_steps, fit_cp_sigma2,
                     fit_sp_sigma2, fit_seed, fit_out);
    }
    if (cv->parsed()) {
      cv_data.binary_given = cv_bin->count() > 0;
      return run_cv(cv_data, cv_folds, cv_reps, cv_methods, cv_max_steps,
                    cv_seed, cv_cp_sigma2, cv_sp_sigma2, cv_threads, cv_out);
    }
    if (sim->parsed()) {
      varsel::SimConfig cfg;
      std::string mode;
      std::string out;
      if (sim_null->parsed()) {
        mode = "null";
        cfg.n_signal = 0;
        cfg.mu = 0.0;
        cfg.n_noise = null_n;
        cfg.reps = null_reps;
        cfg.seed = null_seed;
        cfg.threads = null_threads;
        cfg.max_q = null_max_q >= 0 ? null_max_q : std::min(40, null_n - 1);
        out = null_out;
      } else {
        mode = "signal";
        cfg.n_signal = sig_signal;
        cfg.mu = sig_mu;
        cfg.n_noise = sig_noise;
        cfg.reps = sig_reps;
        cfg.seed = sig_seed;
        cfg.threads = sig_threads;
        cfg.max_q =
            sig_max_q >= 0 ? sig_max_q : std::min(40, sig_signal + sig_noise - 1);
        out = sig_out;
      }
      return run_sim(cfg, mode, out);
    }
    std::cerr << "no subcommand given\n";
    return kExitUsage;
  } catch (const varsel::UnknownColumnError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnknownColumn;
  } catch (const varsel::ZeroVarianceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitZeroVariance;
  } catch (const varsel::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const varsel::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const varsel::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
