#include "lrfield/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lrfield/config.hpp"
#include "lrfield/errors.hpp"
#include "lrfield/experiments.hpp"

namespace lrfield {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t effective_seed(std::uint64_t config_seed, bool seed_flag_set, std::uint64_t seed_flag) {
  if (seed_flag_set) return seed_flag;
  if (const char* env = std::getenv("LRFIELD_BASE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw config_error("LRFIELD_BASE_SEED is not an integer");
    }
  }
  return config_seed;
}

void write_outputs(const std::filesystem::path& dir, const McSummary& summary) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream os(dir / "raw.csv");
    write_raw_csv(os, summary);
  }
  {
    std::ofstream os(dir / "summary.csv");
    write_summary_csv(os, summary);
  }
  {
    std::ofstream os(dir / "fit.csv");
    write_fit_csv(os, summary);
  }
}

// Columns of a simple CSV with a header row; numeric cells only where used.
struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int column(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k)
      if (header[k] == name) return static_cast<int>(k);
    throw io_error("CSV column not found: " + name);
  }
};

Csv read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot read " + path);
  Csv csv;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (first) {
      csv.header = cells;
      first = false;
    } else {
      csv.rows.push_back(cells);
    }
  }
  if (first) throw io_error("empty CSV: " + path);
  return csv;
}

int cmd_simulate(const std::string& model_desc, std::vector<long> extent,
                 std::vector<double> origin, double step, std::uint64_t seed, std::uint64_t stream,
                 const std::string& method, int waves, const std::string& out) {
  const CovarianceModel model = parse_model_desc(model_desc);
  GridSpec grid;
  grid.dimension = static_cast<int>(extent.size());
  if (origin.size() != extent.size())
    throw config_error("--origin and --extent must have the same length");
  grid.step = step;
  for (std::size_t d = 0; d < extent.size(); ++d) {
    grid.extent[d] = extent[d];
    grid.origin[d] = origin[d];
  }
  SimOptions opts;
  opts.waves = waves;
  opts.stream = stream;
  if (method == "circulant")
    opts.method = SimMethod::circulant_embedding;
  else if (method == "random_wave")
    opts.method = SimMethod::random_wave;
  else if (!method.empty())
    throw config_error("unknown method: " + method);
  const FieldRealization field = simulate(model, grid, seed, opts);
  dump_field(field, out);
  std::cout << "simulate: wrote " << out << " (" << field.values.size() << " values, clipped_mass="
            << fmt(field.clipped_mass) << ")\n";
  return 0;
}

int cmd_functional(const std::string& window_desc, const std::string& model_desc, int kappa,
                   double alpha, const std::string& weight_desc, double r, double h,
                   const std::string& kind, std::uint64_t seed, std::uint64_t stream,
                   const std::string& convention, const std::string& method, int waves) {
  const Window2 window = parse_window_desc(window_desc);
  const CovarianceModel model = parse_model_desc(model_desc);
  const WeightFunction g = parse_weight_desc(weight_desc);
  NormalizationSpec norm;
  norm.alpha = alpha;
  norm.L = model.slowly_varying;
  norm.convention = convention == "theorem7" ? NormConvention::theorem7 : NormConvention::theorem4;
  SimOptions opts;
  opts.waves = waves;
  opts.stream = stream;
  if (method == "circulant")
    opts.method = SimMethod::circulant_embedding;
  else if (method == "random_wave")
    opts.method = SimMethod::random_wave;
  else if (!method.empty())
    throw config_error("unknown method: " + method);

  const double grid_h = kind == "additive" ? 1.0 : h;
  const GridSpec grid = experiment_grid(window, r, grid_h);
  const FieldRealization field = simulate(model, grid, seed, opts);
  FunctionalResult res;
  if (kind == "additive")
    res = additive_functional(field, window, r, kappa, g, norm);
  else if (kind == "riemann")
    res = riemann_functional(field, window, r, kappa, g, h, norm);
  else
    throw config_error("--kind must be additive or riemann");

  std::cout << "kind,window,model,g,kappa,alpha,r,h,seed,stream,raw,normalization,value\n";
  std::cout << kind << ',' << window.shape() << ',' << model.describe() << ',' << g.describe() << ','
            << kappa << ',' << fmt(alpha) << ',' << fmt(r) << ',' << fmt(res.h) << ',' << seed << ','
            << stream << ',' << fmt(res.raw) << ',' << fmt(res.normalization) << ','
            << fmt(res.value) << '\n';
  return 0;
}

int cmd_mc(bool reference, const std::string& config_path, const std::string& out_dir,
           bool seed_set, std::uint64_t seed, int threads) {
  ExperimentPlan plan = load_plan(config_path);
  plan.base_seed = effective_seed(plan.base_seed, seed_set, seed);
  if (threads >= 0) plan.threads = threads;
  const McSummary summary = reference ? reference_distance_experiment(plan) : msd_experiment(plan);
  const std::filesystem::path dir = std::filesystem::path(out_dir) / plan.name;
  write_outputs(dir, summary);
  std::cout << (reference ? "refmc" : "mc") << ' ' << plan.name << ": wrote " << dir.string()
            << "/{raw,summary,fit}.csv; mean L2 " << fmt(summary.per_r.front().mean) << " (r="
            << fmt(summary.per_r.front().r) << ") -> " << fmt(summary.per_r.back().mean) << " (r="
            << fmt(summary.per_r.back().r) << ")\n";
  return 0;
}

int cmd_fit(const std::string& input, const std::string& out) {
  const Csv csv = read_csv(input);
  const int rcol = csv.column("r");
  const int mcol = csv.column("mean");
  McSummary summary;
  summary.name = "fit";
  for (const auto& row : csv.rows) {
    RSummary rs;
    rs.r = std::stod(row.at(rcol));
    rs.mean = std::stod(row.at(mcol));
    rs.values = {rs.mean, rs.mean};
    summary.per_r.push_back(rs);
  }
  const RateFits fits = fit_rates(summary);
  summary.power_fit = fits.power;
  summary.exponential_fit = fits.exponential;
  summary.fits_valid = true;
  std::ostringstream body;
  write_fit_csv(body, summary);
  if (!out.empty()) {
    std::ofstream os(out);
    os << body.str();
  }
  std::cout << body.str();
  return 0;
}

int cmd_qq(const std::string& input, const std::string& column, const std::string& config_path,
           double r, int reps, bool seed_set, std::uint64_t seed, const std::string& out) {
  std::vector<double> samples;
  if (!input.empty()) {
    const Csv csv = read_csv(input);
    const int vcol = csv.column(column);
    for (const auto& row : csv.rows) samples.push_back(std::stod(row.at(vcol)));
  } else if (!config_path.empty()) {
    ExperimentPlan plan = load_plan(config_path);
    plan.base_seed = effective_seed(plan.base_seed, seed_set, seed);
    if (r <= 0.0) r = plan.r_list.empty() ? 0.0 : plan.r_list.back();
    samples = additive_samples(plan, r, reps);
  } else {
    throw config_error("qq needs either --input or --config");
  }
  const auto pairs = qq_data(samples);
  std::ostringstream body;
  write_qq_csv(body, pairs);
  if (!out.empty()) {
    std::ofstream os(out);
    os << body.str();
    std::cout << "qq: wrote " << out << " (" << pairs.size() << " pairs)\n";
  } else {
    std::cout << body.str();
  }
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"long-range dependent field functionals"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "simulate a field realization and dump it");
  std::string sim_model = "bessel:v=0", sim_method, sim_out = "field.bin";
  std::vector<long> sim_extent = {64, 64};
  std::vector<double> sim_origin = {0.0, 0.0};
  double sim_step = 1.0;
  std::uint64_t sim_seed = 1, sim_stream = 0;
  int sim_waves = 2000;
  sim->add_option("--model", sim_model);
  sim->add_option("--extent", sim_extent)->delimiter(',');
  sim->add_option("--origin", sim_origin)->delimiter(',');
  sim->add_option("--step", sim_step);
  sim->add_option("--seed", sim_seed);
  sim->add_option("--stream", sim_stream);
  sim->add_option("--method", sim_method);
  sim->add_option("--waves", sim_waves);
  sim->add_option("--out", sim_out);

  // functional
  auto* fun = app.add_subcommand("functional", "evaluate one functional on a fresh realization");
  fun->set_help_flag("--help", "print help");  // frees -h for the step option --h
  std::string fun_window = "square", fun_model = "bessel:v=0", fun_weight = "one_plus_sum_sq";
  std::string fun_kind = "additive", fun_convention = "theorem4", fun_method;
  int fun_kappa = 2, fun_waves = 2000;
  double fun_alpha = 0.5, fun_r = 10.0, fun_h = 0.1;
  std::uint64_t fun_seed = 1, fun_stream = 0;
  fun->add_option("--window", fun_window);
  fun->add_option("--model", fun_model);
  fun->add_option("--kappa", fun_kappa);
  fun->add_option("--alpha", fun_alpha);
  fun->add_option("--g", fun_weight);
  fun->add_option("--r", fun_r);
  fun->add_option("--h", fun_h);
  fun->add_option("--kind", fun_kind);
  fun->add_option("--seed", fun_seed);
  fun->add_option("--stream", fun_stream);
  fun->add_option("--convention", fun_convention);
  fun->add_option("--method", fun_method);
  fun->add_option("--waves", fun_waves);

  // mc / refmc
  auto* mc = app.add_subcommand("mc", "mean-square distance experiment");
  auto* refmc = app.add_subcommand("refmc", "reference-distance experiment");
  std::string mc_config, mc_out = "out", refmc_config, refmc_out = "out";
  std::uint64_t mc_seed = 0, refmc_seed = 0;
  int mc_threads = -1, refmc_threads = -1;
  auto* mc_seed_opt = mc->add_option("--seed", mc_seed);
  mc->add_option("--config", mc_config)->required();
  mc->add_option("--out", mc_out);
  mc->add_option("--threads", mc_threads);
  auto* refmc_seed_opt = refmc->add_option("--seed", refmc_seed);
  refmc->add_option("--config", refmc_config)->required();
  refmc->add_option("--out", refmc_out);
  refmc->add_option("--threads", refmc_threads);

  // fit
  auto* fit = app.add_subcommand("fit", "rate fits from a summary CSV");
  std::string fit_input, fit_out;
  fit->add_option("--input", fit_input)->required();
  fit->add_option("--out", fit_out);

  // qq
  auto* qq = app.add_subcommand(
      "qq", "normal Q-Q pairs, from a raw CSV column or freshly sampled functionals");
  std::string qq_input, qq_column = "value", qq_config, qq_out;
  double qq_r = 0.0;
  int qq_reps = 500;
  std::uint64_t qq_seed = 0;
  qq->add_option("--input", qq_input);
  qq->add_option("--column", qq_column);
  qq->add_option("--config", qq_config);
  qq->add_option("--r", qq_r);
  qq->add_option("--reps", qq_reps);
  auto* qq_seed_opt = qq->add_option("--seed", qq_seed);
  qq->add_option("--out", qq_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  }

  try {
    if (sim->parsed())
      return cmd_simulate(sim_model, sim_extent, sim_origin, sim_step, sim_seed, sim_stream,
                          sim_method, sim_waves, sim_out);
    if (fun->parsed())
      return cmd_functional(fun_window, fun_model, fun_kappa, fun_alpha, fun_weight, fun_r, fun_h,
                            fun_kind, fun_seed, fun_stream, fun_convention, fun_method, fun_waves);
    if (mc->parsed()) return cmd_mc(false, mc_config, mc_out, !mc_seed_opt->empty(), mc_seed, mc_threads);
    if (refmc->parsed())
      return cmd_mc(true, refmc_config, refmc_out, !refmc_seed_opt->empty(), refmc_seed, refmc_threads);
    if (fit->parsed()) return cmd_fit(fit_input, fit_out);
    if (qq->parsed())
      return cmd_qq(qq_input, qq_column, qq_config, qq_r, qq_reps, !qq_seed_opt->empty(), qq_seed,
                    qq_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "error: usage: expected a subcommand\n";
  return 2;
}

}  // namespace lrfield
