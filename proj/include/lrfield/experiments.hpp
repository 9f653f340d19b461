#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lrfield/functionals.hpp"
#include "lrfield/stats.hpp"

namespace lrfield {

// Monte Carlo plan for the discretisation-distance studies.  Desk-scale
// defaults (30 reps x 10 outer) stand in for the full-scale 100 x 50 runs.
struct ExperimentPlan {
  std::string name = "experiment";
  int experiment_id = 1;
  CovarianceModel model = CovarianceModel::bessel(0.0);
  Window2 window = Window2::square();
  WeightFunction g = WeightFunction::one_plus_sum_sq();
  int kappa = 2;
  double alpha = 0.5;
  double h = 0.1;
  std::vector<double> r_list = {10, 20, 40, 80};
  int reps = 30;
  int outer = 10;
  std::uint64_t base_seed = 20240101;
  double reference_scale = 0.0;  // R for the reference-distance experiment
  int waves = 2000;
  std::optional<SimMethod> method;
  int threads = 0;  // 0 = hardware concurrency
  NormConvention convention = NormConvention::theorem4;

  void validate(bool reference_mode) const;
  NormalizationSpec norm() const { return {alpha, model.slowly_varying, convention}; }
};

struct RSummary {
  double r = 0.0;
  std::vector<double> values;  // squared distances, ordered (outer, rep)
  std::vector<std::uint64_t> streams;
  double mean = 0.0;
  double se = 0.0;
};

struct McSummary {
  std::string name;
  int reps = 0;  // inner replications per outer run
  std::vector<RSummary> per_r;
  LinearFit power_fit;        // log(mean) on log r
  LinearFit exponential_fit;  // log(mean) on r
  bool fits_valid = false;
};

// L2_hat(r): for every r and replication, simulate one field, evaluate the
// normalized Riemann and additive functionals on it and record the squared
// difference.
McSummary msd_experiment(const ExperimentPlan& plan);

// L2_tilde(R, r): one field per replication on the R-sized domain; the
// R-scaled Riemann functional stands in for the limit and is compared with
// the additive functional on each r-subwindow of the same realization.
McSummary reference_distance_experiment(const ExperimentPlan& plan);

// Replication samples of the normalized additive functional Y^(d)_{r,kappa}
// (one independent field per replication), for distribution studies.
std::vector<double> additive_samples(const ExperimentPlan& plan, double r, int reps);

// Grid covering the bounding box of A(r) with integer-aligned nodes of step
// h = 1/m; the grid every experiment simulates on.
GridSpec experiment_grid(const Window2& window, double r, double h);

struct RateFits {
  LinearFit power;
  LinearFit exponential;
};
// OLS of log(mean) on log r (power) and on r (exponential).
RateFits fit_rates(const McSummary& summary);

// Sorted standardized samples paired with normal quantiles at plotting
// positions (k - 0.5)/N; pairs are (theoretical, sample).
std::vector<std::pair<double, double>> qq_data(std::span<const double> samples);

void write_raw_csv(std::ostream& os, const McSummary& summary);
void write_summary_csv(std::ostream& os, const McSummary& summary);
void write_fit_csv(std::ostream& os, const McSummary& summary);
void write_qq_csv(std::ostream& os, std::span<const std::pair<double, double>> pairs);

}  // namespace lrfield
