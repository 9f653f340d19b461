#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lrfield/errors.hpp"
#include "lrfield/experiments.hpp"
#include "lrfield/functionals.hpp"
#include "support/oracles.hpp"

using namespace lrfield;

namespace {

FieldRealization zero_field(const GridSpec& grid) {
  FieldRealization f;
  f.grid = grid;
  f.values.assign(grid.total(), 0.0);
  f.model = CovarianceModel::constant_test();
  return f;
}

FieldRealization constant_field(const GridSpec& grid, double c) {
  FieldRealization f = zero_field(grid);
  for (auto& v : f.values) v = c;
  return f;
}

NormalizationSpec study_norm() {
  NormalizationSpec norm;
  norm.alpha = 0.5;
  norm.convention = NormConvention::theorem4;
  return norm;
}

}  // namespace

TEST_CASE("normalization matches the study's denominator") {
  const WeightFunction g = WeightFunction::one_plus_sum_sq();
  const SlowlyVarying one = SlowlyVarying::one();
  const double d10 = normalize(10.0, 2, 0.5, 2, one, g, NormConvention::theorem4);
  CHECK(d10 == doctest::Approx(std::pow(10.0, 1.5) * 401.0).epsilon(1e-14));

  // kappa = 0 is rejected; the unit weight gives r^(2 - alpha kappa / 2).
  CHECK_THROWS_AS(normalize(10.0, 0, 0.5, 2, one, g, NormConvention::theorem4), Error);
  CHECK(normalize(10.0, 2, 0.5, 2, one, WeightFunction::constant(1.0), NormConvention::theorem4) ==
        doctest::Approx(std::pow(10.0, 1.5)));
  CHECK_THROWS_AS(normalize(10.0, 2, 1.5, 2, one, g, NormConvention::theorem4), Error);

  // theorem7 multiplies by c1^(kappa/2).
  const double d7 = normalize(10.0, 2, 0.5, 2, one, g, NormConvention::theorem7);
  CHECK(d7 == doctest::Approx(d10 * spectral_density_c1(2, 0.5)).epsilon(1e-13));
}

TEST_CASE("additive functional on the zero field counts lattice points") {
  GridSpec grid;
  grid.dimension = 2;
  grid.origin = {-4.0, -4.0, 0.0};
  grid.step = 1.0;
  grid.extent = {9, 9, 1};
  const FieldRealization xi = zero_field(grid);
  const auto res = additive_functional(xi, Window2::square(), 3.0, 2,
                                       WeightFunction::constant(1.0), study_norm());
  // 49 lattice points, H_2(0) = -1.
  CHECK(res.raw == doctest::Approx(-49.0));
  CHECK(res.value == doctest::Approx(-49.0 / std::pow(3.0, 1.5)));
}

TEST_CASE("additive functional with kappa = 1 is the weighted sample sum") {
  GridSpec grid;
  grid.dimension = 2;
  grid.origin = {-3.0, -3.0, 0.0};
  grid.step = 1.0;
  grid.extent = {7, 7, 1};
  FieldRealization xi = zero_field(grid);
  double expected = 0.0;
  for (long i = 0; i < 7; ++i)
    for (long j = 0; j < 7; ++j) {
      const double v = 0.01 * static_cast<double>(i * 7 + j) - 0.2;
      xi.values[xi.grid.flat_index(i, j)] = v;
      expected += v;
    }
  const auto res = additive_functional(xi, Window2::square(), 3.0, 1,
                                       WeightFunction::constant(1.0), study_norm());
  CHECK(res.raw == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("riemann functional on the zero field: square r = 1, h = 0.5") {
  GridSpec grid;
  grid.dimension = 2;
  grid.origin = {-1.0, -1.0, 0.0};
  grid.step = 0.5;
  grid.extent = {5, 5, 1};
  const FieldRealization xi = zero_field(grid);
  const auto res = riemann_functional(xi, Window2::square(), 1.0, 2,
                                      WeightFunction::constant(1.0), 0.5, study_norm());
  CHECK(res.raw == doctest::Approx(-6.25).epsilon(1e-14));  // 0.25 * 25 * (-1)
}

TEST_CASE("study forms against the straight-loop references on 10 seeds") {
  const Window2 square = Window2::square();
  const WeightFunction g = WeightFunction::one_plus_sum_sq();
  const CovarianceModel model = CovarianceModel::bessel(0.0);
  const double r = 4.0, h = 0.1;
  const GridSpec grid = experiment_grid(square, r, h);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SimOptions opts;
    opts.waves = 128;
    const FieldRealization xi = simulate(model, grid, seed, opts);
    const auto yc = riemann_functional(xi, square, r, 2, g, h, study_norm());
    const auto yd = additive_functional(xi, square, r, 2, g, study_norm());
    const double yc_ref = oracles::riemann_study_reference(xi, r, h);
    const double yd_ref = oracles::additive_study_reference(xi, r);
    CHECK(yc.value == doctest::Approx(yc_ref).epsilon(1e-12));
    CHECK(yd.value == doctest::Approx(yd_ref).epsilon(1e-12));
  }
}

TEST_CASE("generic straight-loop oracle on the disc window") {
  const Window2 disc = Window2::disc();
  const WeightFunction g = WeightFunction::one_plus_sum_sq();
  const double r = 5.0, h = 0.25;
  const GridSpec grid = experiment_grid(disc, r, h);
  const double d_r = normalize(r, 2, 0.5, 2, SlowlyVarying::one(), g, NormConvention::theorem4);
  const auto gfun = [](double x, double y) { return 1.0 + (x + y) * (x + y); };
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SimOptions opts;
    opts.waves = 64;
    const FieldRealization xi = simulate(CovarianceModel::bessel(0.0), grid, seed, opts);
    const auto yd = additive_functional(xi, disc, r, 2, g, study_norm());
    const auto yc = riemann_functional(xi, disc, r, 2, g, h, study_norm());
    CHECK(yd.value == doctest::Approx(oracles::additive_reference(xi, disc, r, 2, gfun, d_r))
                          .epsilon(1e-12));
    CHECK(yc.value == doctest::Approx(oracles::riemann_reference(xi, disc, r, 2, gfun, h, d_r))
                          .epsilon(1e-12));
  }
}

TEST_CASE("functional is linear in the weight") {
  const Window2 disc = Window2::disc();
  const GridSpec grid = experiment_grid(disc, 4.0, 1.0);
  SimOptions opts;
  opts.waves = 64;
  const FieldRealization xi = simulate(CovarianceModel::bessel(0.0), grid, 3, opts);
  const auto r1 = additive_functional(xi, disc, 4.0, 2, WeightFunction::constant(1.0), study_norm());
  const auto r2 = additive_functional(xi, disc, 4.0, 2, WeightFunction::constant(2.5), study_norm());
  // d_r carries g(r 1_n), so the normalized value is weight invariant for
  // constant weights; the raw sum scales linearly.
  CHECK(r2.raw == doctest::Approx(2.5 * r1.raw).epsilon(1e-12));
  CHECK(r2.value == doctest::Approx(r1.value).epsilon(1e-12));

  // Additivity of the raw sum: g1 + g2 as weights.
  const auto ga = additive_functional(xi, disc, 4.0, 2, WeightFunction::one_plus_sum_sq(), study_norm());
  double raw_sum_manual = 0.0;
  lattice(disc, 4.0).for_each([&](long i, long j) {
    const double point[2] = {static_cast<double>(i), static_cast<double>(j)};
    const double v = xi.at_point(point);
    const double s = point[0] + point[1];
    raw_sum_manual += (1.0 + s * s) * (v * v - 1.0);
  });
  CHECK(ga.raw == doctest::Approx(raw_sum_manual).epsilon(1e-12));
}

TEST_CASE("discrepancy on constant fields reduces to the area mismatch") {
  const double c = 0.8;
  const double r = 3.0, h = 0.5;
  const GridSpec grid = experiment_grid(Window2::square(), r, h);
  const FieldRealization xi = constant_field(grid, c);
  const WeightFunction g = WeightFunction::constant(1.0);
  const double d = discrepancy(xi, Window2::square(), r, 2, g, h, study_norm());
  // Riemann raw: h^2 (2r/h + 1)^2 H_2(c); additive raw: (2r+1)^2 H_2(c).
  const double h2c = c * c - 1.0;
  const double riemann_raw = h * h * std::pow(2.0 * r / h + 1.0, 2) * h2c;
  const double additive_raw = std::pow(2.0 * r + 1.0, 2) * h2c;
  const double d_r = normalize(r, 2, 0.5, 2, SlowlyVarying::one(), g, NormConvention::theorem4);
  CHECK(d == doctest::Approx(std::pow((riemann_raw - additive_raw) / d_r, 2)).epsilon(1e-12));

  // g = 0 is rejected by construction (weights must be nonzero), and a zero
  // Hermite factor gives zero discrepancy: H_2(1) = 0.
  const FieldRealization ones = constant_field(grid, 1.0);
  CHECK(discrepancy(ones, Window2::square(), r, 2, g, h, study_norm()) == doctest::Approx(0.0));
}

TEST_CASE("paired-variant discrepancy rejects mismatched realizations") {
  const double r = 3.0, h = 0.5;
  const GridSpec grid = experiment_grid(Window2::square(), r, h);
  SimOptions opts;
  opts.waves = 32;
  const FieldRealization a = simulate(CovarianceModel::bessel(0.0), grid, 1, opts);
  const FieldRealization b = simulate(CovarianceModel::bessel(0.0), grid, 2, opts);
  const WeightFunction g = WeightFunction::constant(1.0);
  CHECK_THROWS_AS(discrepancy(a, b, Window2::square(), r, 2, g, h, study_norm()), Error);
  CHECK(discrepancy(a, a, Window2::square(), r, 2, g, h, study_norm()) ==
        doctest::Approx(discrepancy(a, Window2::square(), r, 2, g, h, study_norm())));
}

TEST_CASE("halving h is a Cauchy sequence on a fixed realization") {
  // One fine-grid realization, coarser Riemann sums read off every 2nd/4th
  // node: |Y_h - Y_{h/2}| decreases as h halves.  (h is restricted to 1/m,
  // so the sequence runs over 1/2, 1/4, 1/8.)
  const Window2 disc = Window2::disc();
  const WeightFunction g = WeightFunction::one_plus_sum_sq();
  const double r = 6.0;
  const GridSpec fine = experiment_grid(disc, r, 0.125);
  SimOptions opts;
  opts.waves = 256;
  const FieldRealization xi = simulate(CovarianceModel::bessel(0.0), fine, 11, opts);

  const auto subsample = [&](long every) {
    FieldRealization sub;
    sub.grid = xi.grid;
    sub.grid.step = xi.grid.step * static_cast<double>(every);
    sub.grid.extent[0] = (xi.grid.extent[0] - 1) / every + 1;
    sub.grid.extent[1] = (xi.grid.extent[1] - 1) / every + 1;
    sub.seed = xi.seed;
    sub.stream = xi.stream;
    sub.model = xi.model;
    sub.values.resize(sub.grid.total());
    for (long i = 0; i < sub.grid.extent[0]; ++i)
      for (long j = 0; j < sub.grid.extent[1]; ++j)
        sub.values[sub.grid.flat_index(i, j)] = xi.at(i * every, j * every);
    return sub;
  };

  const double y8 = riemann_functional(xi, disc, r, 2, g, 0.125, study_norm()).value;
  const double y4 = riemann_functional(subsample(2), disc, r, 2, g, 0.25, study_norm()).value;
  const double y2 = riemann_functional(subsample(4), disc, r, 2, g, 0.5, study_norm()).value;
  CHECK(std::abs(y4 - y8) < std::abs(y2 - y4));
}

TEST_CASE("coverage errors: missing lattice values and wrong grids") {
  GridSpec grid;
  grid.dimension = 2;
  grid.origin = {-2.0, -2.0, 0.0};
  grid.step = 1.0;
  grid.extent = {5, 5, 1};
  const FieldRealization xi = zero_field(grid);
  // Window needs points out to +-3; the grid stops at +-2.
  CHECK_THROWS_AS(additive_functional(xi, Window2::square(), 3.0, 2, WeightFunction::constant(1.0),
                                      study_norm()),
                  Error);
  // Riemann with h not matching the grid step.
  CHECK_THROWS_AS(riemann_functional(xi, Window2::square(), 1.5, 2, WeightFunction::constant(1.0),
                                     0.5, study_norm()),
                  Error);
}

TEST_CASE("3-d functionals against direct loops") {
  GridSpec grid;
  grid.dimension = 3;
  grid.origin = {-3.0, -3.0, -3.0};
  grid.step = 0.5;
  grid.extent = {13, 13, 13};
  FieldRealization xi = zero_field(grid);
  // Deterministic synthetic values.
  for (std::size_t k = 0; k < xi.values.size(); ++k)
    xi.values[k] = std::sin(0.37 * static_cast<double>(k));

  const Window3 box = Window3::box();
  const WeightFunction g = WeightFunction::one_plus_sum_sq();
  NormalizationSpec norm;
  norm.alpha = 0.5;
  const auto yd = additive_functional(xi, box, 2.0, 2, g, norm);
  double want = 0.0;
  for (long i = -2; i <= 2; ++i)
    for (long j = -2; j <= 2; ++j)
      for (long k = -2; k <= 2; ++k) {
        const double point[3] = {static_cast<double>(i), static_cast<double>(j),
                                 static_cast<double>(k)};
        const double v = xi.at_point(point);
        const double s = point[0] + point[1] + point[2];
        want += (1.0 + s * s) * (v * v - 1.0);
      }
  const double d_r = normalize(2.0, 2, 0.5, 3, SlowlyVarying::one(), g, NormConvention::theorem4);
  CHECK(yd.raw == doctest::Approx(want).epsilon(1e-12));
  CHECK(yd.value == doctest::Approx(want / d_r).epsilon(1e-12));

  const auto yc = riemann_functional(xi, box, 2.0, 2, g, 0.5, norm);
  double want_c = 0.0;
  for (long i = 0; i < 13; ++i)
    for (long j = 0; j < 13; ++j)
      for (long k = 0; k < 13; ++k) {
        const double x = grid.coord(0, i), y = grid.coord(1, j), z = grid.coord(2, k);
        if (std::abs(x) > 2.0 + 1e-9 || std::abs(y) > 2.0 + 1e-9 || std::abs(z) > 2.0 + 1e-9)
          continue;
        const double v = xi.at(i, j, k);
        const double s = x + y + z;
        want_c += (1.0 + s * s) * (v * v - 1.0);
      }
  want_c *= 0.125;
  CHECK(yc.raw == doctest::Approx(want_c).epsilon(1e-12));
}
