#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lrfield/config.hpp"
#include "lrfield/errors.hpp"
#include "lrfield/experiments.hpp"
#include "lrfield/hermite.hpp"
#include "lrfield/stats.hpp"

namespace py = pybind11;
using namespace lrfield;

namespace {

py::array_t<double> field_values(const FieldRealization& f) {
  std::vector<py::ssize_t> shape;
  for (int d = 0; d < f.grid.dimension; ++d) shape.push_back(f.grid.extent[d]);
  py::array_t<double> out(shape);
  std::copy(f.values.begin(), f.values.end(), out.mutable_data());
  return out;
}

py::array_t<long> lattice_points(const LatticeSet& set) {
  const py::ssize_t n = static_cast<py::ssize_t>(set.size());
  py::array_t<long> out({n, static_cast<py::ssize_t>(2)});
  auto view = out.mutable_unchecked<2>();
  py::ssize_t row = 0;
  set.for_each([&](long i, long j) {
    view(row, 0) = i;
    view(row, 1) = j;
    ++row;
  });
  return out;
}

py::array_t<long> lattice3_points(const LatticeSet3& set) {
  const py::ssize_t n = static_cast<py::ssize_t>(set.size());
  py::array_t<long> out({n, static_cast<py::ssize_t>(3)});
  auto view = out.mutable_unchecked<2>();
  py::ssize_t row = 0;
  set.for_each([&](long i1, long i2, long i3) {
    view(row, 0) = i1;
    view(row, 1) = i2;
    view(row, 2) = i3;
    ++row;
  });
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "long-range dependent field functionals";

  py::register_exception<Error>(m, "LrfieldError");

  // hermite
  m.def("hermite_eval", &hermite_eval, py::arg("m"), py::arg("x"));
  m.def("moments_as_hermite", &moments_as_hermite, py::arg("kappa"));
  m.def("level_excess_parseval", &level_excess_parseval, py::arg("level"), py::arg("order"));

  py::class_<HermiteExpansion>(m, "HermiteExpansion")
      .def_readonly("coefficients", &HermiteExpansion::coefficients)
      .def_readonly("truncation_order", &HermiteExpansion::truncation_order)
      .def_readonly("hermite_rank", &HermiteExpansion::hermite_rank)
      .def_readonly("converged", &HermiteExpansion::converged)
      .def_readonly("achieved_tolerance", &HermiteExpansion::achieved_tolerance)
      .def("parseval_partial", &HermiteExpansion::parseval_partial);
  m.def(
      "expansion_coefficients",
      [](const std::function<double(double)>& g, int order) {
        return expansion_coefficients(g, order);
      },
      py::arg("g"), py::arg("order"));
  m.def("level_excess_coefficients", &level_excess_coefficients, py::arg("level"),
        py::arg("order"));

  // covariance
  py::class_<CovarianceModel>(m, "CovarianceModel")
      .def_static("power_law",
                  [](double alpha, int n) { return CovarianceModel::power_law(alpha, n); },
                  py::arg("alpha"), py::arg("n") = 2)
      .def_static("cauchy", &CovarianceModel::cauchy, py::arg("theta"), py::arg("beta"),
                  py::arg("n") = 2)
      .def_static("bessel", &CovarianceModel::bessel, py::arg("v") = 0.0, py::arg("n") = 2)
      .def_static("constant_test", &CovarianceModel::constant_test, py::arg("n") = 2)
      .def_static("parse", &parse_model_desc, py::arg("descriptor"))
      .def("describe", &CovarianceModel::describe)
      .def("lrd_exponent", &CovarianceModel::lrd_exponent)
      .def("__repr__", [](const CovarianceModel& c) { return "<CovarianceModel " + c.describe() + ">"; });
  m.def("cov_eval", &cov_eval, py::arg("model"), py::arg("r"));
  m.def("spectral_density_c1", &spectral_density_c1, py::arg("n"), py::arg("alpha"));
  m.def("lrd_check", &lrd_check, py::arg("model"));
  m.def("bessel_j", &bessel_j, py::arg("v"), py::arg("x"));

  // windows and lattices
  py::class_<Window2>(m, "Window2")
      .def_static("square", &Window2::square)
      .def_static("rectangle", &Window2::rectangle, py::arg("a"), py::arg("b"), py::arg("y_lo"),
                  py::arg("y_hi"))
      .def_static("disc", &Window2::disc, py::arg("radius") = 1.0)
      .def_static("polygon", &Window2::polygon, py::arg("vertices"))
      .def_static("lshape", &Window2::lshape)
      .def_static("step_window", &Window2::step_window, py::arg("a") = -1.0, py::arg("b") = 1.0,
                  py::arg("y_lo") = -1.0, py::arg("y1") = 1.0, py::arg("y2") = 0.5,
                  py::arg("jump_x") = 0.25)
      .def_static("parse", &parse_window_desc, py::arg("descriptor"))
      .def_property_readonly("a", &Window2::a)
      .def_property_readonly("b", &Window2::b)
      .def_property_readonly("shape", [](const Window2& w) { return w.shape(); })
      .def("contains", &Window2::contains, py::arg("x"), py::arg("y"), py::arg("r") = 1.0)
      .def("area", &Window2::area, py::arg("tol") = 1e-9)
      .def("lower_r", &Window2::lower_r, py::arg("r"), py::arg("x"))
      .def("upper_r", &Window2::upper_r, py::arg("r"), py::arg("x"));

  py::class_<Window3>(m, "Window3")
      .def_static("box", &Window3::box)
      .def_static("ball", &Window3::ball, py::arg("radius") = 1.0)
      .def_static("prism", &Window3::prism, py::arg("base"), py::arg("z_lo"), py::arg("z_hi"))
      .def("contains", &Window3::contains, py::arg("x1"), py::arg("x2"), py::arg("x3"),
           py::arg("r") = 1.0);

  m.def(
      "column_bounds",
      [](const Window2& w, double r, long i) -> py::object {
        const ColumnBounds cb = column_bounds(w, r, i);
        if (cb.empty) return py::none();
        return py::make_tuple(cb.lo, cb.hi);
      },
      py::arg("window"), py::arg("r"), py::arg("i"));
  m.def(
      "lattice", [](const Window2& w, double r) { return lattice_points(lattice(w, r)); },
      py::arg("window"), py::arg("r"));
  m.def(
      "lattice3", [](const Window3& w, double r) { return lattice3_points(lattice(w, r)); },
      py::arg("window"), py::arg("r"));

  // simulation
  py::enum_<SimMethod>(m, "SimMethod")
      .value("circulant_embedding", SimMethod::circulant_embedding)
      .value("random_wave", SimMethod::random_wave);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](int dimension, std::vector<double> origin, double step,
                       std::vector<long> extent) {
             GridSpec g;
             g.dimension = dimension;
             g.step = step;
             if (origin.size() != static_cast<std::size_t>(dimension) ||
                 extent.size() != static_cast<std::size_t>(dimension))
               throw parameter_error("origin/extent must have `dimension` entries");
             for (int d = 0; d < dimension; ++d) {
               g.origin[d] = origin[d];
               g.extent[d] = extent[d];
             }
             g.validate();
             return g;
           }),
           py::arg("dimension"), py::arg("origin"), py::arg("step"), py::arg("extent"))
      .def_readonly("dimension", &GridSpec::dimension)
      .def_readonly("step", &GridSpec::step);

  py::class_<FieldRealization>(m, "FieldRealization")
      .def_property_readonly("values", &field_values)
      .def_readonly("seed", &FieldRealization::seed)
      .def_readonly("stream", &FieldRealization::stream)
      .def_readonly("method", &FieldRealization::method)
      .def_readonly("clipped_mass", &FieldRealization::clipped_mass)
      .def_readonly("warnings", &FieldRealization::warnings);

  m.def(
      "simulate",
      [](const CovarianceModel& model, const GridSpec& grid, std::uint64_t seed,
         std::optional<SimMethod> method, int waves, std::uint64_t stream) {
        SimOptions opts;
        opts.method = method;
        opts.waves = waves;
        opts.stream = stream;
        return simulate(model, grid, seed, opts);
      },
      py::arg("model"), py::arg("grid"), py::arg("seed"), py::arg("method") = std::nullopt,
      py::arg("waves") = 2000, py::arg("stream") = 0);
  m.def("experiment_grid", &experiment_grid, py::arg("window"), py::arg("r"), py::arg("h"));
  m.def("dump_field", &dump_field, py::arg("field"), py::arg("path"));
  m.def("load_field", &load_field, py::arg("path"));

  // weights and functionals
  py::class_<WeightFunction>(m, "WeightFunction")
      .def_static("constant", &WeightFunction::constant, py::arg("c") = 1.0)
      .def_static("polynomial_power", &WeightFunction::polynomial_power, py::arg("mu1"),
                  py::arg("mu2"))
      .def_static("log_weighted", &WeightFunction::log_weighted, py::arg("mu1"), py::arg("mu2"))
      .def_static("one_plus_sum_sq", &WeightFunction::one_plus_sum_sq)
      .def_static("parse", &parse_weight_desc, py::arg("descriptor"))
      .def("__call__",
           [](const WeightFunction& g, std::vector<double> x) {
             return g(std::span<const double>(x.data(), x.size()));
           })
      .def("at_diag", &WeightFunction::at_diag, py::arg("r"), py::arg("n"))
      .def("limit_shape",
           [](const WeightFunction& g, std::vector<double> u) {
             return g.limit_shape(std::span<const double>(u.data(), u.size()));
           })
      .def("describe", &WeightFunction::describe);

  py::enum_<NormConvention>(m, "NormConvention")
      .value("theorem4", NormConvention::theorem4)
      .value("theorem7", NormConvention::theorem7);

  m.def(
      "normalize",
      [](double r, int kappa, double alpha, int n, const WeightFunction& g,
         NormConvention convention) {
        return normalize(r, kappa, alpha, n, SlowlyVarying::one(), g, convention);
      },
      py::arg("r"), py::arg("kappa"), py::arg("alpha"), py::arg("n"), py::arg("g"),
      py::arg("convention") = NormConvention::theorem4);

  py::class_<FunctionalResult>(m, "FunctionalResult")
      .def_readonly("raw", &FunctionalResult::raw)
      .def_readonly("value", &FunctionalResult::value)
      .def_readonly("r", &FunctionalResult::r)
      .def_readonly("kappa", &FunctionalResult::kappa)
      .def_readonly("h", &FunctionalResult::h)
      .def_readonly("normalization", &FunctionalResult::normalization);

  const auto make_norm_spec = [](double alpha, NormConvention convention) {
    NormalizationSpec norm;
    norm.alpha = alpha;
    norm.convention = convention;
    return norm;
  };
  m.def(
      "additive_functional",
      [make_norm_spec](const FieldRealization& field, const Window2& window, double r, int kappa,
                       const WeightFunction& g, double alpha, NormConvention convention) {
        return additive_functional(field, window, r, kappa, g, make_norm_spec(alpha, convention));
      },
      py::arg("field"), py::arg("window"), py::arg("r"), py::arg("kappa"), py::arg("g"),
      py::arg("alpha"), py::arg("convention") = NormConvention::theorem4);
  m.def(
      "riemann_functional",
      [make_norm_spec](const FieldRealization& field, const Window2& window, double r, int kappa,
                       const WeightFunction& g, double h, double alpha, NormConvention convention) {
        return riemann_functional(field, window, r, kappa, g, h, make_norm_spec(alpha, convention));
      },
      py::arg("field"), py::arg("window"), py::arg("r"), py::arg("kappa"), py::arg("g"),
      py::arg("h"), py::arg("alpha"), py::arg("convention") = NormConvention::theorem4);
  m.def(
      "discrepancy",
      [make_norm_spec](const FieldRealization& field, const Window2& window, double r, int kappa,
                       const WeightFunction& g, double h, double alpha, NormConvention convention) {
        return discrepancy(field, window, r, kappa, g, h, make_norm_spec(alpha, convention));
      },
      py::arg("field"), py::arg("window"), py::arg("r"), py::arg("kappa"), py::arg("g"),
      py::arg("h"), py::arg("alpha"), py::arg("convention") = NormConvention::theorem4);

  // experiments
  py::class_<ExperimentPlan>(m, "ExperimentPlan")
      .def(py::init<>())
      .def_readwrite("name", &ExperimentPlan::name)
      .def_readwrite("experiment_id", &ExperimentPlan::experiment_id)
      .def_readwrite("model", &ExperimentPlan::model)
      .def_readwrite("window", &ExperimentPlan::window)
      .def_readwrite("g", &ExperimentPlan::g)
      .def_readwrite("kappa", &ExperimentPlan::kappa)
      .def_readwrite("alpha", &ExperimentPlan::alpha)
      .def_readwrite("h", &ExperimentPlan::h)
      .def_readwrite("r_list", &ExperimentPlan::r_list)
      .def_readwrite("reps", &ExperimentPlan::reps)
      .def_readwrite("outer", &ExperimentPlan::outer)
      .def_readwrite("base_seed", &ExperimentPlan::base_seed)
      .def_readwrite("reference_scale", &ExperimentPlan::reference_scale)
      .def_readwrite("waves", &ExperimentPlan::waves)
      .def_readwrite("threads", &ExperimentPlan::threads);

  py::class_<RSummary>(m, "RSummary")
      .def_readonly("r", &RSummary::r)
      .def_readonly("values", &RSummary::values)
      .def_readonly("mean", &RSummary::mean)
      .def_readonly("se", &RSummary::se);

  py::class_<LinearFit>(m, "LinearFit")
      .def_readonly("intercept", &LinearFit::intercept)
      .def_readonly("slope", &LinearFit::slope)
      .def_readonly("r2", &LinearFit::r2);

  py::class_<McSummary>(m, "McSummary")
      .def_readonly("name", &McSummary::name)
      .def_readonly("per_r", &McSummary::per_r)
      .def_readonly("power_fit", &McSummary::power_fit)
      .def_readonly("exponential_fit", &McSummary::exponential_fit)
      .def_readonly("fits_valid", &McSummary::fits_valid);

  m.def("msd_experiment", &msd_experiment, py::arg("plan"),
        py::call_guard<py::gil_scoped_release>());
  m.def("reference_distance_experiment", &reference_distance_experiment, py::arg("plan"),
        py::call_guard<py::gil_scoped_release>());
  m.def("additive_samples", &additive_samples, py::arg("plan"), py::arg("r"), py::arg("reps"),
        py::call_guard<py::gil_scoped_release>());
  m.def("parse_plan", &parse_plan_json, py::arg("json_text"));
  m.def("load_plan", &load_plan, py::arg("path"));
  m.def(
      "qq_data",
      [](std::vector<double> samples) {
        return qq_data(std::span<const double>(samples.data(), samples.size()));
      },
      py::arg("samples"));
  m.def("fit_rates", [](const McSummary& s) {
    const RateFits f = fit_rates(s);
    return py::make_tuple(f.power, f.exponential);
  });
  m.def("normal_quantile", &normal_quantile, py::arg("p"));

  m.attr("__version__") = "0.1.0";
}
