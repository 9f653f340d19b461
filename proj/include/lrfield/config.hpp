#pragma once

#include <string>

#include "lrfield/experiments.hpp"

namespace lrfield {

// Run-config file (JSON; schema documented in the README): sections
// "model", "window", "weight" and "plan" plus "name"/"experiment_id".
ExperimentPlan load_plan(const std::string& path);
ExperimentPlan parse_plan_json(const std::string& text);

// Compact descriptors for command line flags, e.g.
//   model:  "bessel:v=0", "cauchy:theta=2,beta=0.5", "power_law:alpha=0.5",
//           "constant_test"
//   window: "square", "rectangle:a=-1,b=1,ylo=-1,yhi=1", "disc:radius=1",
//           "lshape", "step:jump=0.25"
//   weight: "constant:c=1", "one_plus_sum_sq", "polynomial_power:mu1=1,mu2=2",
//           "log_weighted:mu1=2,mu2=2"
CovarianceModel parse_model_desc(const std::string& desc);
Window2 parse_window_desc(const std::string& desc);
WeightFunction parse_weight_desc(const std::string& desc);

}  // namespace lrfield
