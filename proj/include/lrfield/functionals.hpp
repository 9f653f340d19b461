#pragma once

#include <cstdint>

#include "lrfield/covariance.hpp"
#include "lrfield/fieldsim.hpp"
#include "lrfield/weights.hpp"
#include "lrfield/windows.hpp"

namespace lrfield {

enum class FunctionalKind { additive, continuous_riemann };
enum class NormConvention { theorem4, theorem7 };

// d_r = r^(n - alpha kappa / 2) L^(kappa/2)(r) g(r 1_n); the theorem7
// convention multiplies by c1^(kappa/2)(n, alpha).  Valid for kappa >= 1 and
// alpha in (0, n/kappa).
double normalize(double r, int kappa, double alpha, int n, const SlowlyVarying& L,
                 const WeightFunction& g, NormConvention convention);

struct NormalizationSpec {
  double alpha = 0.5;
  SlowlyVarying L;
  NormConvention convention = NormConvention::theorem4;
};

struct FunctionalResult {
  double raw = 0.0;    // unnormalized sum (the Riemann sum includes h^n)
  double value = 0.0;  // raw / d_r
  FunctionalKind kind = FunctionalKind::additive;
  double r = 0.0;
  int kappa = 1;
  double h = 0.0;  // grid step for the Riemann functional, 0 otherwise
  double normalization = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Additive functional: sum over Q_n(Delta_n(r)) of g(i) H_kappa(xi(i)).
// The field must hold every integer lattice point of Q_n on its grid.
FunctionalResult additive_functional(const FieldRealization& field, const Window2& window,
                                     double r, int kappa, const WeightFunction& g,
                                     const NormalizationSpec& norm);
FunctionalResult additive_functional(const FieldRealization& field, const Window3& window,
                                     double r, int kappa, const WeightFunction& g,
                                     const NormalizationSpec& norm);

// Riemann-sum approximation of the integral functional:
// h^n sum over grid nodes inside Delta_n(r) (closed membership) of
// g(x) H_kappa(xi(x)).
FunctionalResult riemann_functional(const FieldRealization& field, const Window2& window,
                                    double r, int kappa, const WeightFunction& g, double h,
                                    const NormalizationSpec& norm);
FunctionalResult riemann_functional(const FieldRealization& field, const Window3& window,
                                    double r, int kappa, const WeightFunction& g, double h,
                                    const NormalizationSpec& norm);

// One-replication discrepancy (riemann_raw - additive_raw)^2 / d_r^2, both
// functionals read from the same realization.
double discrepancy(const FieldRealization& field, const Window2& window, double r, int kappa,
                   const WeightFunction& g, double h, const NormalizationSpec& norm);
// Variant taking the pair explicitly; throws a pairing error unless both
// arguments are the same realization.
double discrepancy(const FieldRealization& continuous_field, const FieldRealization& lattice_field,
                   const Window2& window, double r, int kappa, const WeightFunction& g, double h,
                   const NormalizationSpec& norm);

}  // namespace lrfield
