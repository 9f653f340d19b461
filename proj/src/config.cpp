#include "lrfield/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "lrfield/errors.hpp"

namespace lrfield {

namespace {

using nlohmann::json;

SlowlyVarying parse_slowly_varying(const json& j) {
  if (j.is_null()) return SlowlyVarying::one();
  const std::string kind = j.value("kind", "constant_one");
  if (kind == "constant_one") return SlowlyVarying::one();
  if (kind == "log_power") return SlowlyVarying::log_power(j.value("p", 1.0));
  throw config_error("unknown slowly varying kind: " + kind);
}

CovarianceModel parse_model_json(const json& j) {
  const std::string family = j.value("family", "");
  const int n = j.value("dimension", 2);
  if (family == "bessel") return CovarianceModel::bessel(j.value("v", 0.0), n);
  if (family == "cauchy") return CovarianceModel::cauchy(j.value("theta", 2.0), j.value("beta", 0.5), n);
  if (family == "power_law") {
    SlowlyVarying L = parse_slowly_varying(j.contains("slowly_varying") ? j["slowly_varying"] : json());
    return CovarianceModel::power_law(j.value("alpha", 0.5), n, L);
  }
  if (family == "constant_test") return CovarianceModel::constant_test(n);
  throw config_error("unknown covariance family: " + family);
}

Window2 parse_window_json(const json& j) {
  const std::string shape = j.value("shape", "");
  if (shape == "square") return Window2::square();
  if (shape == "rectangle")
    return Window2::rectangle(j.value("a", -1.0), j.value("b", 1.0), j.value("ylo", -1.0),
                              j.value("yhi", 1.0));
  if (shape == "disc") return Window2::disc(j.value("radius", 1.0));
  if (shape == "lshape") return Window2::lshape();
  if (shape == "step")
    return Window2::step_window(j.value("a", -1.0), j.value("b", 1.0), j.value("ylo", -1.0),
                                j.value("y1", 1.0), j.value("y2", 0.5), j.value("jump", 0.25));
  if (shape == "polygon") {
    if (!j.contains("vertices")) throw config_error("polygon window needs a vertices array");
    std::vector<std::array<double, 2>> vs;
    for (const auto& v : j["vertices"]) vs.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    return Window2::polygon(vs);
  }
  throw config_error("unknown window shape: " + shape);
}

WeightFunction parse_weight_json(const json& j) {
  const std::string family = j.value("family", "constant");
  if (family == "constant") return WeightFunction::constant(j.value("c", 1.0));
  if (family == "one_plus_sum_sq") return WeightFunction::one_plus_sum_sq();
  if (family == "polynomial_power")
    return WeightFunction::polynomial_power(j.value("mu1", 1), j.value("mu2", 1));
  if (family == "log_weighted")
    return WeightFunction::log_weighted(j.value("mu1", 2.0), j.value("mu2", 2.0));
  throw config_error("unknown weight family: " + family);
}

}  // namespace

ExperimentPlan parse_plan_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw config_error(std::string("invalid JSON: ") + e.what());
  }
  try {
    ExperimentPlan plan;
    plan.name = j.value("name", "experiment");
    plan.experiment_id = j.value("experiment_id", 1);
    if (j.contains("model")) plan.model = parse_model_json(j["model"]);
    if (j.contains("window")) plan.window = parse_window_json(j["window"]);
    if (j.contains("weight")) plan.g = parse_weight_json(j["weight"]);
    if (j.contains("plan")) {
      const json& p = j["plan"];
      plan.kappa = p.value("kappa", plan.kappa);
      plan.alpha = p.value("alpha", plan.alpha);
      plan.h = p.value("h", plan.h);
      if (p.contains("r")) plan.r_list = p["r"].get<std::vector<double>>();
      plan.reps = p.value("reps", plan.reps);
      plan.outer = p.value("outer", plan.outer);
      plan.base_seed = p.value("base_seed", plan.base_seed);
      plan.reference_scale = p.value("R", plan.reference_scale);
      plan.waves = p.value("waves", plan.waves);
      plan.threads = p.value("threads", plan.threads);
      if (p.contains("method")) {
        const std::string m = p["method"].get<std::string>();
        if (m == "circulant" || m == "circulant_embedding")
          plan.method = SimMethod::circulant_embedding;
        else if (m == "random_wave")
          plan.method = SimMethod::random_wave;
        else
          throw config_error("unknown simulation method: " + m);
      }
      if (p.contains("convention")) {
        const std::string c = p["convention"].get<std::string>();
        if (c == "theorem4")
          plan.convention = NormConvention::theorem4;
        else if (c == "theorem7")
          plan.convention = NormConvention::theorem7;
        else
          throw config_error("unknown normalization convention: " + c);
      }
    }
    return plan;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw config_error(std::string("invalid run config: ") + e.what());
  }
}

ExperimentPlan load_plan(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw config_error("cannot read config file: " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_plan_json(buf.str());
}

namespace {

// "name:key=val,key=val" -> (name, {key: val})
std::pair<std::string, std::map<std::string, double>> split_desc(const std::string& desc) {
  const auto colon = desc.find(':');
  std::string name = desc.substr(0, colon);
  std::map<std::string, double> kv;
  if (colon != std::string::npos) {
    std::istringstream rest(desc.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw config_error("bad descriptor item: " + item);
      try {
        kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw config_error("bad numeric value in descriptor: " + item);
      }
    }
  }
  return {name, kv};
}

double kv_get(const std::map<std::string, double>& kv, const std::string& key, double dflt) {
  const auto it = kv.find(key);
  return it == kv.end() ? dflt : it->second;
}

}  // namespace

CovarianceModel parse_model_desc(const std::string& desc) {
  const auto [name, kv] = split_desc(desc);
  const int n = static_cast<int>(kv_get(kv, "n", 2));
  if (name == "bessel") return CovarianceModel::bessel(kv_get(kv, "v", 0.0), n);
  if (name == "cauchy")
    return CovarianceModel::cauchy(kv_get(kv, "theta", 2.0), kv_get(kv, "beta", 0.5), n);
  if (name == "power_law") {
    SlowlyVarying L = SlowlyVarying::one();
    if (kv.count("logp")) L = SlowlyVarying::log_power(kv_get(kv, "logp", 1.0));
    return CovarianceModel::power_law(kv_get(kv, "alpha", 0.5), n, L);
  }
  if (name == "constant_test") return CovarianceModel::constant_test(n);
  throw config_error("unknown covariance family: " + name);
}

Window2 parse_window_desc(const std::string& desc) {
  const auto [name, kv] = split_desc(desc);
  if (name == "square") return Window2::square();
  if (name == "rectangle")
    return Window2::rectangle(kv_get(kv, "a", -1.0), kv_get(kv, "b", 1.0), kv_get(kv, "ylo", -1.0),
                              kv_get(kv, "yhi", 1.0));
  if (name == "disc") return Window2::disc(kv_get(kv, "radius", 1.0));
  if (name == "lshape") return Window2::lshape();
  if (name == "step")
    return Window2::step_window(kv_get(kv, "a", -1.0), kv_get(kv, "b", 1.0), kv_get(kv, "ylo", -1.0),
                                kv_get(kv, "y1", 1.0), kv_get(kv, "y2", 0.5),
                                kv_get(kv, "jump", 0.25));
  throw config_error("unknown window shape: " + name);
}

WeightFunction parse_weight_desc(const std::string& desc) {
  const auto [name, kv] = split_desc(desc);
  if (name == "constant") return WeightFunction::constant(kv_get(kv, "c", 1.0));
  if (name == "one_plus_sum_sq") return WeightFunction::one_plus_sum_sq();
  if (name == "polynomial_power")
    return WeightFunction::polynomial_power(static_cast<int>(kv_get(kv, "mu1", 1)),
                                            static_cast<int>(kv_get(kv, "mu2", 1)));
  if (name == "log_weighted")
    return WeightFunction::log_weighted(kv_get(kv, "mu1", 2.0), kv_get(kv, "mu2", 2.0));
  throw config_error("unknown weight family: " + name);
}

}  // namespace lrfield
