#include "lrfield/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <thread>

#include "lrfield/errors.hpp"
#include "lrfield/rng.hpp"

namespace lrfield {

void ExperimentPlan::validate(bool reference_mode) const {
  if (reps < 2) throw plan_error("plan requires reps >= 2");
  if (outer < 1) throw plan_error("plan requires outer >= 1");
  if (kappa < 1) throw plan_error("plan requires kappa >= 1");
  if (r_list.empty()) throw plan_error("plan requires a nonempty r list");
  for (std::size_t k = 0; k + 1 < r_list.size(); ++k)
    if (!(r_list[k] < r_list[k + 1])) throw plan_error("r list must be strictly increasing");
  if (!(r_list.front() > 0.0)) throw plan_error("r values must be positive");
  if (!(alpha > 0.0 && alpha < 2.0 / static_cast<double>(kappa)))
    throw plan_error("plan requires alpha in (0, n/kappa)");
  const double m = 1.0 / h;
  if (!(h > 0.0) || std::abs(m - std::round(m)) > 1e-6)
    throw plan_error("plan requires h = 1/m for an integer m");
  if (reference_mode && !(reference_scale >= r_list.back()))
    throw plan_error("reference scale R must be >= max(r)");
  model.validate();
}

// Grid covering the bounding box of A(r) (and hence Delta_2(r)) with
// integer-aligned nodes of step h = 1/m.
GridSpec experiment_grid(const Window2& window, double r, double h) {
  const LatticeSet set = lattice(window, r);
  if (set.columns.empty()) throw plan_error("window lattice is empty at the requested scale");
  long i_min = set.columns.front().i;
  long i_max = set.columns.back().i;
  long j_min = set.columns.front().j_lo, j_max = set.columns.front().j_hi;
  for (const auto& c : set.columns) {
    j_min = std::min(j_min, c.j_lo);
    j_max = std::max(j_max, c.j_hi);
  }
  const long m = static_cast<long>(std::llround(1.0 / h));
  GridSpec grid;
  grid.dimension = 2;
  grid.step = h;
  grid.origin = {static_cast<double>(i_min), static_cast<double>(j_min), 0.0};
  grid.extent = {(i_max - i_min) * m + 1, (j_max - j_min) * m + 1, 1};
  return grid;
}

namespace {

void run_parallel(int threads, std::size_t tasks, const std::function<void(std::size_t)>& body) {
  int n = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  n = std::min<int>(n, static_cast<int>(tasks));
  if (n <= 1) {
    for (std::size_t t = 0; t < tasks; ++t) body(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int w = 0; w < n; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t t = next.fetch_add(1);
        if (t >= tasks) return;
        try {
          body(t);
        } catch (...) {
          std::scoped_lock lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

void summarize(McSummary& summary) {
  for (auto& rs : summary.per_r) {
    rs.mean = mean(rs.values);
    rs.se = standard_error(rs.values);
  }
}

void attach_fits(McSummary& summary) {
  summary.fits_valid = true;
  for (const auto& rs : summary.per_r)
    if (!(rs.mean > 0.0)) summary.fits_valid = false;
  if (summary.per_r.size() < 3) summary.fits_valid = false;
  if (summary.fits_valid) {
    const RateFits fits = fit_rates(summary);
    summary.power_fit = fits.power;
    summary.exponential_fit = fits.exponential;
  }
}

}  // namespace

McSummary msd_experiment(const ExperimentPlan& plan) {
  plan.validate(false);
  McSummary summary;
  summary.name = plan.name;
  summary.reps = plan.reps;
  summary.per_r.resize(plan.r_list.size());

  const std::size_t per_r = static_cast<std::size_t>(plan.outer) * plan.reps;
  std::vector<GridSpec> grids;
  for (std::size_t ri = 0; ri < plan.r_list.size(); ++ri) {
    summary.per_r[ri].r = plan.r_list[ri];
    summary.per_r[ri].values.assign(per_r, 0.0);
    summary.per_r[ri].streams.assign(per_r, 0);
    grids.push_back(experiment_grid(plan.window, plan.r_list[ri], plan.h));
  }

  const NormalizationSpec norm = plan.norm();
  const std::size_t tasks = plan.r_list.size() * per_r;
  run_parallel(plan.threads, tasks, [&](std::size_t t) {
    const std::size_t ri = t / per_r;
    const std::size_t slot = t % per_r;
    const int o = static_cast<int>(slot) / plan.reps;
    const int rep = static_cast<int>(slot) % plan.reps;
    const double r = plan.r_list[ri];
    const std::uint64_t stream =
        make_stream_id(static_cast<std::uint32_t>(plan.experiment_id), static_cast<std::uint32_t>(o),
                       static_cast<std::uint32_t>(ri), static_cast<std::uint32_t>(rep));
    SimOptions opts;
    opts.method = plan.method;
    opts.waves = plan.waves;
    opts.stream = stream;
    const FieldRealization field = simulate(plan.model, grids[ri], plan.base_seed, opts);
    const double yc = riemann_functional(field, plan.window, r, plan.kappa, plan.g, plan.h, norm).value;
    const double yd = additive_functional(field, plan.window, r, plan.kappa, plan.g, norm).value;
    summary.per_r[ri].values[slot] = (yc - yd) * (yc - yd);
    summary.per_r[ri].streams[slot] = stream;
  });

  summarize(summary);
  attach_fits(summary);
  return summary;
}

McSummary reference_distance_experiment(const ExperimentPlan& plan) {
  plan.validate(true);
  McSummary summary;
  summary.name = plan.name;
  summary.reps = plan.reps;
  summary.per_r.resize(plan.r_list.size());
  const std::size_t per_r = static_cast<std::size_t>(plan.outer) * plan.reps;
  for (std::size_t ri = 0; ri < plan.r_list.size(); ++ri) {
    summary.per_r[ri].r = plan.r_list[ri];
    summary.per_r[ri].values.assign(per_r, 0.0);
    summary.per_r[ri].streams.assign(per_r, 0);
  }

  const GridSpec grid = experiment_grid(plan.window, plan.reference_scale, plan.h);
  const NormalizationSpec norm = plan.norm();
  run_parallel(plan.threads, per_r, [&](std::size_t slot) {
    const int o = static_cast<int>(slot) / plan.reps;
    const int rep = static_cast<int>(slot) % plan.reps;
    const std::uint64_t stream =
        make_stream_id(static_cast<std::uint32_t>(plan.experiment_id), static_cast<std::uint32_t>(o),
                       0, static_cast<std::uint32_t>(rep));
    SimOptions opts;
    opts.method = plan.method;
    opts.waves = plan.waves;
    opts.stream = stream;
    const FieldRealization field = simulate(plan.model, grid, plan.base_seed, opts);
    const double yc_ref =
        riemann_functional(field, plan.window, plan.reference_scale, plan.kappa, plan.g, plan.h, norm)
            .value;
    for (std::size_t ri = 0; ri < plan.r_list.size(); ++ri) {
      const double yd =
          additive_functional(field, plan.window, plan.r_list[ri], plan.kappa, plan.g, norm).value;
      summary.per_r[ri].values[slot] = (yc_ref - yd) * (yc_ref - yd);
      summary.per_r[ri].streams[slot] = stream;
    }
  });

  summarize(summary);
  attach_fits(summary);
  return summary;
}

std::vector<double> additive_samples(const ExperimentPlan& plan, double r, int reps) {
  if (reps < 1) throw plan_error("additive_samples requires reps >= 1");
  // Only integer lattice values are needed, so simulate on the unit grid.
  ExperimentPlan p = plan;
  p.h = 1.0;
  const GridSpec grid = experiment_grid(p.window, r, 1.0);
  const NormalizationSpec norm = plan.norm();
  std::vector<double> out(reps, 0.0);
  run_parallel(plan.threads, static_cast<std::size_t>(reps), [&](std::size_t rep) {
    const std::uint64_t stream =
        make_stream_id(static_cast<std::uint32_t>(plan.experiment_id), 0, 0,
                       static_cast<std::uint32_t>(rep));
    SimOptions opts;
    opts.method = plan.method;
    opts.waves = plan.waves;
    opts.stream = stream;
    const FieldRealization field = simulate(plan.model, grid, plan.base_seed, opts);
    out[rep] = additive_functional(field, plan.window, r, plan.kappa, plan.g, norm).value;
  });
  return out;
}

RateFits fit_rates(const McSummary& summary) {
  std::vector<double> log_r, rr, log_mean;
  for (const auto& rs : summary.per_r) {
    if (!(rs.mean > 0.0)) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%g", rs.r);
      throw fit_error(std::string("fit_rates: nonpositive mean at r = ") + buf);
    }
    log_r.push_back(std::log(rs.r));
    rr.push_back(rs.r);
    log_mean.push_back(std::log(rs.mean));
  }
  if (log_r.size() < 3) throw fit_error("fit_rates requires at least 3 r values");
  RateFits fits;
  fits.power = ols_fit(log_r, log_mean);
  fits.exponential = ols_fit(rr, log_mean);
  return fits;
}

std::vector<std::pair<double, double>> qq_data(std::span<const double> samples) {
  if (samples.size() < 10) throw parameter_error("qq_data requires at least 10 samples");
  const double m = mean(samples);
  const double var = sample_variance(samples);
  const double floor_sd = 1e-12 * std::max(1.0, std::abs(m));
  if (!(var > floor_sd * floor_sd)) throw degenerate_sample_error("qq_data: zero sample variance");
  const double sd = std::sqrt(var);
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(sorted.size());
  const double n = static_cast<double>(sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const double p = (static_cast<double>(k) + 0.5) / n;
    pairs.emplace_back(normal_quantile(p), (sorted[k] - m) / sd);
  }
  return pairs;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_raw_csv(std::ostream& os, const McSummary& summary) {
  os << "experiment,r,rep,outer,value,seed\n";
  const std::size_t reps = summary.reps > 0 ? static_cast<std::size_t>(summary.reps) : 1;
  for (const auto& rs : summary.per_r) {
    for (std::size_t slot = 0; slot < rs.values.size(); ++slot) {
      os << summary.name << ',' << fmt(rs.r) << ',' << slot % reps << ',' << slot / reps << ','
         << fmt(rs.values[slot]) << ',' << rs.streams[slot] << '\n';
    }
  }
}

void write_summary_csv(std::ostream& os, const McSummary& summary) {
  os << "r,mean,se,n\n";
  for (const auto& rs : summary.per_r)
    os << fmt(rs.r) << ',' << fmt(rs.mean) << ',' << fmt(rs.se) << ',' << rs.values.size() << '\n';
}

void write_fit_csv(std::ostream& os, const McSummary& summary) {
  os << "model,intercept,slope,r2\n";
  if (summary.fits_valid) {
    os << "power," << fmt(summary.power_fit.intercept) << ',' << fmt(summary.power_fit.slope) << ','
       << fmt(summary.power_fit.r2) << '\n';
    os << "exponential," << fmt(summary.exponential_fit.intercept) << ','
       << fmt(summary.exponential_fit.slope) << ',' << fmt(summary.exponential_fit.r2) << '\n';
  }
}

void write_qq_csv(std::ostream& os, std::span<const std::pair<double, double>> pairs) {
  os << "theoretical,sample\n";
  for (const auto& [t, s] : pairs) os << fmt(t) << ',' << fmt(s) << '\n';
}

}  // namespace lrfield
