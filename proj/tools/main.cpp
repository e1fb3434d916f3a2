// rocsbb command-line tool: estimate / simulate / cdf-bands.
// Links only the public C API.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rocsbb.h"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
  throw CliError{code, message};
}

[[noreturn]] void fail_api(int status) {
  throw CliError{status, rocsbb_last_error()};
}

void check(int status) {
  if (status != ROCSBB_OK) fail_api(status);
}

template <typename T>
T* require(T* handle) {
  if (!handle) fail_api(rocsbb_last_status());
  return handle;
}

// Shortest decimal representation that reloads to the same double.
std::string fmt(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ROCSBB_E_DATA, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) fail(ROCSBB_E_DATA, "write failed for '" + path.string() + "'");
}

void write_json(const fs::path& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

fs::path prepare_out_dir(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ROCSBB_E_DATA, "cannot create output directory '" + out + "'");
  return dir;
}

struct InputOptions {
  std::string path;
  std::string group_column = "group";
  std::string value_column = "value";
  std::vector<std::string> labels{"1", "2", "3"};
};

rocsbb_sample* load_sample(const InputOptions& in) {
  rocsbb_sample* s =
      rocsbb_sample_from_csv(in.path.c_str(), in.group_column.c_str(),
                             in.value_column.c_str(), in.labels[0].c_str(),
                             in.labels[1].c_str(), in.labels[2].c_str());
  return require(s);
}

json manifest_base(const std::string& subcommand, const std::vector<std::string>& argv,
                   uint64_t seed, int threads) {
  json m;
  m["artifact_version"] = rocsbb_version();
  m["subcommand"] = subcommand;
  m["command"] = argv;
  m["seed"] = seed;
  m["threads"] = threads;
  return m;
}

void finish_manifest(json& m, const fs::path& dir,
                     std::chrono::steady_clock::time_point start) {
  const auto elapsed = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  m["wall_clock_seconds"] = elapsed;
  write_json(dir / "manifest.json", m);
}

std::string checksum_hex(uint64_t checksum) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(checksum));
  return buf;
}

/* ---- estimate ----------------------------------------------------------- */

struct EstimateArgs {
  InputOptions input;
  std::string method;
  std::size_t b = 5000;
  std::size_t grid = 50;
  uint64_t seed = 0;
  double level = 0.95;
  std::size_t resamples = 1000;
  int threads = 0;
  bool keep_draws = false;
  std::string out = ".";
  bool b_given = false;
  bool resamples_given = false;
};

int method_code(const std::string& name) {
  if (name == "bb") return ROCSBB_METHOD_BB;
  if (name == "empirical") return ROCSBB_METHOD_EMPIRICAL;
  if (name == "kernel-nrd0") return ROCSBB_METHOD_KERNEL_NRD0;
  if (name == "kernel-ucv") return ROCSBB_METHOD_KERNEL_UCV;
  if (name == "normal") return ROCSBB_METHOD_NORMAL;
  fail(ROCSBB_E_USAGE, "unknown method '" + name + "'");
}

void run_estimate(const EstimateArgs& args, const std::vector<std::string>& argv) {
  const auto start = std::chrono::steady_clock::now();
  const int method = method_code(args.method);
  if (method != ROCSBB_METHOD_BB && args.b_given) {
    fail(ROCSBB_E_USAGE, "--b applies only to --method bb (use --resamples)");
  }
  if (method == ROCSBB_METHOD_BB && args.resamples_given) {
    fail(ROCSBB_E_USAGE, "--resamples applies only to frequentist methods (use --b)");
  }
  if (args.keep_draws && method != ROCSBB_METHOD_BB) {
    fail(ROCSBB_E_USAGE, "--draws applies only to --method bb");
  }

  rocsbb_sample* sample = load_sample(args.input);
  rocsbb_grid* grid = require(rocsbb_grid_default(args.grid));
  const fs::path dir = prepare_out_dir(args.out);

  json vus_json;
  vus_json["method"] = args.method;
  vus_json["seed"] = args.seed;

  rocsbb_surface* surface = nullptr;
  if (method == ROCSBB_METHOD_BB) {
    rocsbb_bb_options opts = rocsbb_bb_options_default();
    opts.seed = args.seed;
    opts.replicates = args.b;
    opts.level = args.level;
    opts.threads = args.threads;
    rocsbb_posterior* posterior = nullptr;
    check(rocsbb_bb_estimate(sample, grid, &opts, &surface, &posterior));
    vus_json["vus"] = rocsbb_posterior_mean(posterior);
    vus_json["ci_lower"] = rocsbb_posterior_lower(posterior);
    vus_json["ci_upper"] = rocsbb_posterior_upper(posterior);
    vus_json["b_or_resamples"] = args.b;
    if (args.keep_draws) {
      const std::size_t n = rocsbb_posterior_draw_count(posterior);
      std::vector<double> draws(n);
      check(rocsbb_posterior_draws(posterior, draws.data(), n));
      std::string csv = "replicate,vus\n";
      for (std::size_t i = 0; i < n; ++i) {
        csv += std::to_string(i) + "," + fmt(draws[i]) + "\n";
      }
      write_text(dir / "vus_draws.csv", csv);
    }
    rocsbb_posterior_free(posterior);
  } else {
    surface = require(rocsbb_plug_in_surface(sample, method, grid));
    double point = 0.0, lower = 0.0, upper = 0.0;
    if (method == ROCSBB_METHOD_NORMAL) {
      // Parametric plug-in: report the surface-integral point estimate only.
      check(rocsbb_surface_vus(surface, &point));
      vus_json["vus"] = point;
      vus_json["ci_lower"] = nullptr;
      vus_json["ci_upper"] = nullptr;
      vus_json["b_or_resamples"] = 0;
    } else {
      check(rocsbb_bootstrap_vus_ci(sample, method, args.resamples, args.level,
                                    args.seed, args.threads, &point, &lower, &upper));
      vus_json["vus"] = point;
      vus_json["ci_lower"] = lower;
      vus_json["ci_upper"] = upper;
      vus_json["b_or_resamples"] = args.resamples;
    }
  }

  check(rocsbb_surface_write_csv(surface, (dir / "surface.csv").string().c_str()));
  write_json(dir / "vus.json", vus_json);

  json m = manifest_base("estimate", argv, args.seed, args.threads);
  m["method"] = args.method;
  m["level"] = args.level;
  m["grid_points"] = args.grid;
  if (method == ROCSBB_METHOD_BB) {
    m["b"] = args.b;
  } else if (method != ROCSBB_METHOD_NORMAL) {
    m["resamples"] = args.resamples;
  }
  m["input"] = {{"path", args.input.path},
                {"checksum_fnv1a64", checksum_hex(rocsbb_sample_checksum(sample))},
                {"sizes", {rocsbb_sample_size(sample, 1), rocsbb_sample_size(sample, 2),
                           rocsbb_sample_size(sample, 3)}}};
  finish_manifest(m, dir, start);

  rocsbb_surface_free(surface);
  rocsbb_grid_free(grid);
  rocsbb_sample_free(sample);
}

/* ---- simulate ----------------------------------------------------------- */

struct SimulateArgs {
  int scenario = 0;
  std::string spec_file;
  std::vector<std::size_t> sizes{50, 50, 50};
  std::size_t datasets = 300;
  std::size_t b = 2000;
  uint64_t seed = 0;
  double level = 0.95;
  std::size_t grid = 50;
  std::string study = "both";
  int threads = 0;
  std::string out = ".";
};

const char* method_name(int method) {
  switch (method) {
    case ROCSBB_METHOD_BB: return "bb";
    case ROCSBB_METHOD_EMPIRICAL: return "empirical";
    case ROCSBB_METHOD_KERNEL_NRD0: return "kernel_nrd0";
    case ROCSBB_METHOD_KERNEL_UCV: return "kernel_ucv";
    case ROCSBB_METHOD_NORMAL: return "normal";
    default: return "unknown";
  }
}

double median_of(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double quartile_of(std::vector<double> v, double p) {
  // R type-7 quantile, matching the library's convention.
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

void run_simulate(const SimulateArgs& args, const std::vector<std::string>& argv) {
  const auto start = std::chrono::steady_clock::now();
  if ((args.scenario != 0) == !args.spec_file.empty()) {
    fail(ROCSBB_E_USAGE, "exactly one of --scenario and --spec is required");
  }
  if (args.study != "emse" && args.study != "coverage" && args.study != "both") {
    fail(ROCSBB_E_USAGE, "--study must be emse, coverage or both");
  }
  if (args.sizes.size() != 3) {
    fail(ROCSBB_E_USAGE, "--sizes expects n1,n2,n3");
  }

  rocsbb_scenario* scenario = nullptr;
  if (args.scenario != 0) {
    scenario = require(rocsbb_scenario_builtin(args.scenario));
  } else {
    std::ifstream in(args.spec_file, std::ios::binary);
    if (!in) fail(ROCSBB_E_DATA, "cannot open '" + args.spec_file + "'");
    std::ostringstream text;
    text << in.rdbuf();
    scenario = require(rocsbb_scenario_from_json(text.str().c_str()));
  }

  rocsbb_study_options opts = rocsbb_study_options_default();
  opts.n1 = args.sizes[0];
  opts.n2 = args.sizes[1];
  opts.n3 = args.sizes[2];
  opts.n_datasets = args.datasets;
  opts.bb_replicates = args.b;
  opts.level = args.level;
  opts.grid_points = args.grid;
  opts.seed = args.seed;
  opts.threads = args.threads;

  rocsbb_study* study = nullptr;
  {
    rocsbb_study* st = rocsbb_run_study(scenario, &opts);
    study = require(st);
  }

  const fs::path dir = prepare_out_dir(args.out);
  const double true_vus = rocsbb_study_true_vus(study);

  std::string csv = "dataset,estimator,vus,emse,ci_lower,ci_upper,covered,failed\n";
  std::map<int, std::vector<double>> emse_by_method;
  std::map<int, std::vector<double>> vus_by_method;
  const std::size_t n_cells = rocsbb_study_cell_count(study);
  for (std::size_t i = 0; i < n_cells; ++i) {
    std::size_t dataset = 0;
    int method = 0, covered = 0, failed = 0;
    double emse = 0.0, vus = 0.0, lo = 0.0, hi = 0.0;
    check(rocsbb_study_cell(study, i, &dataset, &method, &emse, &vus, &lo, &hi,
                            &covered, &failed));
    csv += std::to_string(dataset);
    csv += ',';
    csv += method_name(method);
    csv += ',';
    csv += std::isnan(vus) ? "" : fmt(vus);
    csv += ',';
    csv += std::isnan(emse) ? "" : fmt(emse);
    csv += ',';
    csv += std::isnan(lo) ? "" : fmt(lo);
    csv += ',';
    csv += std::isnan(hi) ? "" : fmt(hi);
    csv += ',';
    csv += std::to_string(covered);
    csv += ',';
    csv += std::to_string(failed);
    csv += '\n';
    if (!failed) {
      emse_by_method[method].push_back(emse);
      vus_by_method[method].push_back(vus);
    }
  }
  write_text(dir / "datasets.csv", csv);

  json summary;
  summary["scenario"] = args.scenario != 0 ? json(args.scenario) : json(args.spec_file);
  summary["sizes"] = args.sizes;
  summary["datasets"] = args.datasets;
  summary["true_vus"] = true_vus;
  summary["study"] = args.study;
  json per_estimator = json::object();
  for (const auto& [method, emses] : emse_by_method) {
    json e;
    if (args.study != "coverage") {
      e["emse_median"] = median_of(emses);
      e["emse_q1"] = quartile_of(emses, 0.25);
      e["emse_q3"] = quartile_of(emses, 0.75);
    }
    const auto& vuses = vus_by_method[method];
    double bias = 0.0;
    for (double v : vuses) bias += v - true_vus;
    e["vus_bias_mean"] = vuses.empty() ? std::nan("") : bias / static_cast<double>(vuses.size());
    e["n_ok"] = vuses.size();
    per_estimator[method_name(method)] = e;
  }
  summary["estimators"] = per_estimator;
  if (args.study != "emse") {
    summary["coverage"] = rocsbb_study_coverage(study);
    summary["level"] = args.level;
  }
  write_json(dir / "summary.json", summary);

  json m = manifest_base("simulate", argv, args.seed, args.threads);
  m["scenario"] = summary["scenario"];
  m["sizes"] = args.sizes;
  m["datasets"] = args.datasets;
  m["b"] = args.b;
  m["level"] = args.level;
  m["grid_points"] = args.grid;
  m["study"] = args.study;
  finish_manifest(m, dir, start);

  rocsbb_study_free(study);
  rocsbb_scenario_free(scenario);
}

/* ---- cdf-bands ---------------------------------------------------------- */

struct CdfBandsArgs {
  InputOptions input;
  int group = 0;
  std::size_t b = 2000;
  uint64_t seed = 0;
  double level = 0.95;
  std::size_t grid_z = 100;
  int threads = 0;
  std::string out = ".";
};

void run_cdf_bands(const CdfBandsArgs& args, const std::vector<std::string>& argv) {
  const auto start = std::chrono::steady_clock::now();
  if (args.group < 1 || args.group > 3) fail(ROCSBB_E_USAGE, "--group must be 1, 2 or 3");
  if (args.grid_z < 2) fail(ROCSBB_E_USAGE, "--grid-z must be at least 2");

  rocsbb_sample* sample = load_sample(args.input);
  const std::size_t n = rocsbb_sample_size(sample, args.group);
  std::vector<double> values(n);
  check(rocsbb_sample_values(sample, args.group, values.data(), n));
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double span = std::max(*hi_it - *lo_it, 1.0);
  const double z_lo = *lo_it - 0.02 * span;
  const double z_hi = *hi_it + 0.02 * span;
  std::vector<double> z(args.grid_z);
  for (std::size_t i = 0; i < args.grid_z; ++i) {
    z[i] = z_lo + (z_hi - z_lo) * static_cast<double>(i) /
                      static_cast<double>(args.grid_z - 1);
  }

  std::vector<double> mean(z.size()), lower(z.size()), upper(z.size());
  check(rocsbb_bb_cdf_band(sample, args.group, z.data(), z.size(), args.b, args.level,
                           args.seed, args.threads, mean.data(), lower.data(),
                           upper.data()));

  const fs::path dir = prepare_out_dir(args.out);
  std::string csv = "z,mean,lower,upper\n";
  for (std::size_t i = 0; i < z.size(); ++i) {
    csv += fmt(z[i]) + "," + fmt(mean[i]) + "," + fmt(lower[i]) + "," + fmt(upper[i]) + "\n";
  }
  write_text(dir / "bands.csv", csv);

  json m = manifest_base("cdf-bands", argv, args.seed, args.threads);
  m["group"] = args.group;
  m["b"] = args.b;
  m["level"] = args.level;
  m["grid_z"] = args.grid_z;
  m["input"] = {{"path", args.input.path},
                {"checksum_fnv1a64", checksum_hex(rocsbb_sample_checksum(sample))}};
  finish_manifest(m, dir, start);

  rocsbb_sample_free(sample);
}

void add_input_options(CLI::App* cmd, InputOptions& input) {
  cmd->add_option("--input", input.path, "CSV file with group and value columns")
      ->required();
  cmd->add_option("--group-column", input.group_column, "Group-label column name");
  cmd->add_option("--value-column", input.value_column, "Value column name");
  cmd->add_option("--labels", input.labels, "Labels mapped to groups 1,2,3")
      ->expected(3)
      ->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-class ROC surface and VUS estimation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rocsbb_version());
  std::vector<std::string> argv_copy(argv, argv + argc);

  EstimateArgs est;
  CLI::App* estimate = app.add_subcommand("estimate", "Estimate the ROC surface and VUS");
  add_input_options(estimate, est.input);
  estimate->add_option("--method", est.method,
                       "bb | empirical | kernel-nrd0 | kernel-ucv | normal")
      ->required();
  auto* est_b = estimate->add_option("--b", est.b, "Bayesian bootstrap replicates");
  auto* est_res =
      estimate->add_option("--resamples", est.resamples, "Frequentist bootstrap resamples");
  estimate->add_option("--grid", est.grid, "Grid points per axis");
  estimate->add_option("--seed", est.seed, "RNG seed")->envname("ROCSBB_SEED");
  estimate->add_option("--level", est.level, "Interval level");
  estimate->add_option("--threads", est.threads, "Worker threads (0 = all cores)")
      ->envname("ROCSBB_THREADS");
  estimate->add_flag("--draws", est.keep_draws, "Also write the posterior VUS draws");
  estimate->add_option("--out", est.out, "Output directory");

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Run a simulation study");
  simulate->add_option("--scenario", sim.scenario, "Builtin scenario id (1-4)");
  simulate->add_option("--spec", sim.spec_file, "Custom scenario JSON file");
  simulate->add_option("--sizes", sim.sizes, "Group sizes n1,n2,n3")
      ->expected(3)
      ->delimiter(',');
  simulate->add_option("--datasets", sim.datasets, "Number of simulated datasets");
  simulate->add_option("--b", sim.b, "Bayesian bootstrap replicates");
  simulate->add_option("--seed", sim.seed, "RNG seed")->envname("ROCSBB_SEED");
  simulate->add_option("--level", sim.level, "Credible-interval level");
  simulate->add_option("--grid", sim.grid, "Grid points per axis");
  simulate->add_option("--study", sim.study, "emse | coverage | both");
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)")
      ->envname("ROCSBB_THREADS");
  simulate->add_option("--out", sim.out, "Output directory");

  CdfBandsArgs bands;
  CLI::App* cdf_bands =
      app.add_subcommand("cdf-bands", "Pointwise posterior band of a group CDF");
  add_input_options(cdf_bands, bands.input);
  cdf_bands->add_option("--group", bands.group, "Group (1, 2 or 3)")->required();
  cdf_bands->add_option("--b", bands.b, "Bayesian bootstrap replicates");
  cdf_bands->add_option("--seed", bands.seed, "RNG seed")->envname("ROCSBB_SEED");
  cdf_bands->add_option("--level", bands.level, "Band level");
  cdf_bands->add_option("--grid-z", bands.grid_z, "Number of z-grid points");
  cdf_bands->add_option("--threads", bands.threads, "Worker threads (0 = all cores)")
      ->envname("ROCSBB_THREADS");
  cdf_bands->add_option("--out", bands.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return ROCSBB_E_USAGE;
  }

  try {
    if (estimate->parsed()) {
      est.b_given = est_b->count() > 0;
      est.resamples_given = est_res->count() > 0;
      run_estimate(est, argv_copy);
    } else if (simulate->parsed()) {
      run_simulate(sim, argv_copy);
    } else if (cdf_bands->parsed()) {
      run_cdf_bands(bands, argv_copy);
    }
  } catch (const CliError& e) {
    std::fprintf(stderr, "rocsbb: error: %s\n", e.message.c_str());
    return e.code == ROCSBB_OK ? ROCSBB_E_INTERNAL : e.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "rocsbb: error: %s\n", e.what());
    return ROCSBB_E_INTERNAL;
  }
  return 0;
}
