#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace lrfield {

// Probabilists' Hermite polynomial H_m(x) via the three-term recurrence
// H_{m+1}(x) = x H_m(x) - m H_{m-1}(x),  H_0 = 1, H_1 = x.
double hermite_eval(int m, double x);

// H_m(x)/sqrt(m!): orthonormal against the standard normal density. Stays
// bounded for fixed x, so it is safe at orders where H_m itself overflows.
double hermite_orthonormal_eval(int m, double x);

// Gauss-Hermite rule for the weight phi(x) (standard normal density):
// sum_i w_i f(x_i) ~ integral f(x) phi(x) dx, exact for degree <= 2n-1.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermiteRule gauss_hermite_rule(int n);

struct QuadratureOptions {
  double tolerance = 1e-10;  // agreement between successive node counts
  int min_nodes = 64;
  int max_nodes = 4096;
  double rank_tolerance = 1e-10;  // |C_j| above this (scaled) counts as nonzero
};

// Expansion G = sum_j C_j H_j / j! with C_j = integral G H_j phi.
// Coefficients are stored unnormalized (C_j, not C_j/j!).
struct HermiteExpansion {
  std::vector<double> coefficients;  // C_0 .. C_J
  int truncation_order = 0;          // J
  std::optional<int> hermite_rank;   // smallest j >= 1 with C_j != 0, if any
  double achieved_tolerance = 0.0;   // max coefficient change at the last refinement
  bool converged = true;             // refinement reached `tolerance`

  // Partial Parseval sum  sum_{j<=J} C_j^2 / j!  (equals ||G||^2 in the limit).
  double parseval_partial() const;
};

// Computes C_0..C_J by adaptive Gauss-Hermite quadrature, doubling the node
// count until successive results agree to options.tolerance. Functions whose
// quadrature of G^2 keeps growing under refinement (not square-integrable
// against phi) raise an integrability error. Slowly converging but bounded
// integrands (e.g. indicators) return converged = false with the achieved
// tolerance recorded.
HermiteExpansion expansion_coefficients(const std::function<double(double)>& G, int J,
                                        const QuadratureOptions& options = {});

// Terms of t^kappa = kappa! sum_{m=0}^{floor(kappa/2)} H_{kappa-2m}(t) / (2^m m! (kappa-2m)!),
// returned as (order, coefficient) pairs with decreasing order.
std::vector<std::pair<int, double>> moments_as_hermite(int kappa);

// Expansion of the level excess indicator chi(t > level):
// C_0 = 1 - Phi(level), C_m = phi(level) H_{m-1}(level) for m >= 1.
HermiteExpansion level_excess_coefficients(double level, int J);

// Parseval partial sum for chi(t > level) up to order J, evaluated with the
// scaled recurrence so that arbitrarily large J stays finite.
double level_excess_parseval(double level, int J);

std::optional<int> rank_from_coefficients(const std::vector<double>& coefficients,
                                          double rank_tolerance = 1e-10);

}  // namespace lrfield
