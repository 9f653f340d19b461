#include "lrfield/functionals.hpp"

#include <cmath>

#include "lrfield/errors.hpp"
#include "lrfield/hermite.hpp"

namespace lrfield {

double normalize(double r, int kappa, double alpha, int n, const SlowlyVarying& L,
                 const WeightFunction& g, NormConvention convention) {
  if (kappa < 1) throw parameter_error("normalize requires kappa >= 1");
  if (!(r > 0.0)) throw parameter_error("normalize requires r > 0");
  if (!(alpha > 0.0 && alpha < static_cast<double>(n) / static_cast<double>(kappa)))
    throw parameter_error("normalize requires alpha in (0, n/kappa)");
  const double diag = g.at_diag(r, n);
  if (!(diag > 0.0)) throw parameter_error("normalize requires g(r 1_n) > 0");
  double d = std::pow(r, static_cast<double>(n) - alpha * static_cast<double>(kappa) / 2.0) *
             std::pow(L(r), static_cast<double>(kappa) / 2.0) * diag;
  if (convention == NormConvention::theorem7)
    d *= std::pow(spectral_density_c1(n, alpha), static_cast<double>(kappa) / 2.0);
  return d;
}

namespace {

double make_norm(const FieldRealization& field, double r, int kappa,
                 const WeightFunction& g, const NormalizationSpec& norm, int n) {
  (void)field;
  return normalize(r, kappa, norm.alpha, n, norm.L, g, norm.convention);
}

}  // namespace

FunctionalResult additive_functional(const FieldRealization& field, const Window2& window,
                                     double r, int kappa, const WeightFunction& g,
                                     const NormalizationSpec& norm) {
  if (kappa < 1) throw parameter_error("additive_functional requires kappa >= 1");
  const double d_r = make_norm(field, r, kappa, g, norm, 2);
  const LatticeSet set = lattice(window, r);
  double raw = 0.0;
  set.for_each([&](long i, long j) {
    const double point[2] = {static_cast<double>(i), static_cast<double>(j)};
    const double xi = field.at_point(point);
    raw += g(point) * hermite_eval(kappa, xi);
  });
  FunctionalResult res;
  res.raw = raw;
  res.normalization = d_r;
  res.value = raw / d_r;
  res.kind = FunctionalKind::additive;
  res.r = r;
  res.kappa = kappa;
  res.h = 0.0;
  res.seed = field.seed;
  res.stream = field.stream;
  return res;
}

FunctionalResult additive_functional(const FieldRealization& field, const Window3& window,
                                     double r, int kappa, const WeightFunction& g,
                                     const NormalizationSpec& norm) {
  if (kappa < 1) throw parameter_error("additive_functional requires kappa >= 1");
  const double d_r = make_norm(field, r, kappa, g, norm, 3);
  const LatticeSet3 set = lattice(window, r);
  double raw = 0.0;
  set.for_each([&](long i1, long i2, long i3) {
    const double point[3] = {static_cast<double>(i1), static_cast<double>(i2),
                             static_cast<double>(i3)};
    const double xi = field.at_point(point);
    raw += g(point) * hermite_eval(kappa, xi);
  });
  FunctionalResult res;
  res.raw = raw;
  res.normalization = d_r;
  res.value = raw / d_r;
  res.kind = FunctionalKind::additive;
  res.r = r;
  res.kappa = kappa;
  res.h = 0.0;
  res.seed = field.seed;
  res.stream = field.stream;
  return res;
}

namespace {

void check_riemann_grid(const FieldRealization& field, double h) {
  if (std::abs(field.grid.step - h) > 1e-12 * std::max(1.0, h))
    throw coverage_error("riemann_functional: field grid step differs from h");
  const double m = 1.0 / h;
  if (std::abs(m - std::round(m)) > 1e-6)
    throw parameter_error("riemann_functional: h must be 1/m for an integer m");
}

}  // namespace

FunctionalResult riemann_functional(const FieldRealization& field, const Window2& window,
                                    double r, int kappa, const WeightFunction& g, double h,
                                    const NormalizationSpec& norm) {
  if (kappa < 1) throw parameter_error("riemann_functional requires kappa >= 1");
  check_riemann_grid(field, h);
  if (field.grid.dimension != 2) throw coverage_error("riemann_functional: 2-d grid expected");
  const double d_r = make_norm(field, r, kappa, g, norm, 2);

  // The grid must cover the window's bounding box.
  const double eps = 1e-9 * std::max(1.0, r);
  const double ar = window.a() * r, br = window.b() * r;
  if (field.grid.origin[0] > ar + eps ||
      field.grid.coord(0, field.grid.extent[0] - 1) < br - eps)
    throw coverage_error("riemann_functional: grid does not cover the window in x");

  double raw = 0.0;
  for (long i = 0; i < field.grid.extent[0]; ++i) {
    const double x = field.grid.coord(0, i);
    if (x < ar - eps || x > br + eps) continue;
    for (long j = 0; j < field.grid.extent[1]; ++j) {
      const double y = field.grid.coord(1, j);
      if (!window.contains(x, y, r)) continue;
      const double point[2] = {x, y};
      raw += g(point) * hermite_eval(kappa, field.at(i, j));
    }
  }
  raw *= h * h;

  FunctionalResult res;
  res.raw = raw;
  res.normalization = d_r;
  res.value = raw / d_r;
  res.kind = FunctionalKind::continuous_riemann;
  res.r = r;
  res.kappa = kappa;
  res.h = h;
  res.seed = field.seed;
  res.stream = field.stream;
  return res;
}

FunctionalResult riemann_functional(const FieldRealization& field, const Window3& window,
                                    double r, int kappa, const WeightFunction& g, double h,
                                    const NormalizationSpec& norm) {
  if (kappa < 1) throw parameter_error("riemann_functional requires kappa >= 1");
  check_riemann_grid(field, h);
  if (field.grid.dimension != 3) throw coverage_error("riemann_functional: 3-d grid expected");
  const double d_r = make_norm(field, r, kappa, g, norm, 3);

  double raw = 0.0;
  for (long i = 0; i < field.grid.extent[0]; ++i) {
    const double x1 = field.grid.coord(0, i);
    for (long j = 0; j < field.grid.extent[1]; ++j) {
      const double x2 = field.grid.coord(1, j);
      for (long k = 0; k < field.grid.extent[2]; ++k) {
        const double x3 = field.grid.coord(2, k);
        if (!window.contains(x1, x2, x3, r)) continue;
        const double point[3] = {x1, x2, x3};
        raw += g(point) * hermite_eval(kappa, field.at(i, j, k));
      }
    }
  }
  raw *= h * h * h;

  FunctionalResult res;
  res.raw = raw;
  res.normalization = d_r;
  res.value = raw / d_r;
  res.kind = FunctionalKind::continuous_riemann;
  res.r = r;
  res.kappa = kappa;
  res.h = h;
  res.seed = field.seed;
  res.stream = field.stream;
  return res;
}

double discrepancy(const FieldRealization& field, const Window2& window, double r, int kappa,
                   const WeightFunction& g, double h, const NormalizationSpec& norm) {
  const FunctionalResult yc = riemann_functional(field, window, r, kappa, g, h, norm);
  const FunctionalResult yd = additive_functional(field, window, r, kappa, g, norm);
  const double diff = yc.raw - yd.raw;
  return diff * diff / (yc.normalization * yc.normalization);
}

double discrepancy(const FieldRealization& continuous_field, const FieldRealization& lattice_field,
                   const Window2& window, double r, int kappa, const WeightFunction& g, double h,
                   const NormalizationSpec& norm) {
  if (continuous_field.seed != lattice_field.seed ||
      continuous_field.stream != lattice_field.stream ||
      continuous_field.method != lattice_field.method)
    throw pairing_error("discrepancy requires both functionals on one realization");
  const FunctionalResult yc = riemann_functional(continuous_field, window, r, kappa, g, h, norm);
  const FunctionalResult yd = additive_functional(lattice_field, window, r, kappa, g, norm);
  const double diff = yc.raw - yd.raw;
  return diff * diff / (yc.normalization * yc.normalization);
}

}  // namespace lrfield
