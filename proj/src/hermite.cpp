#include "lrfield/hermite.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "lrfield/errors.hpp"
#include "lrfield/stats.hpp"

namespace lrfield {

double hermite_eval(int m, double x) {
  if (m < 0) throw parameter_error("hermite_eval requires m >= 0");
  if (m == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < m; ++k) {
    const double next = x * cur - static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_orthonormal_eval(int m, double x) {
  if (m < 0) throw parameter_error("hermite_orthonormal_eval requires m >= 0");
  if (m == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < m; ++k) {
    // e_{k+1} = (x e_k - sqrt(k) e_{k-1}) / sqrt(k+1)
    const double next = (x * cur - std::sqrt(static_cast<double>(k)) * prev) /
                        std::sqrt(static_cast<double>(k + 1));
    prev = cur;
    cur = next;
  }
  return cur;
}

GaussHermiteRule gauss_hermite_rule(int n) {
  if (n < 1) throw parameter_error("gauss_hermite_rule requires n >= 1");
  // Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix of the
  // orthonormal recurrence (diagonal 0, off-diagonal sqrt(k)); weights come
  // from the Christoffel function 1 / sum_k e_k(x)^2 since mu_0 = 1.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1 > 0 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double x = solver.eigenvalues()[i];
    double prev = 1.0, cur = x, sum = 1.0 + x * x;
    for (int k = 1; k < n - 1; ++k) {
      const double next = (x * cur - std::sqrt(static_cast<double>(k)) * prev) /
                          std::sqrt(static_cast<double>(k + 1));
      prev = cur;
      cur = next;
      sum += cur * cur;
      // Outside the oscillatory region the orthonormal values blow up; the
      // weight underflows to zero long before, so stop rather than overflow.
      if (sum > 1e280) {
        sum = std::numeric_limits<double>::infinity();
        break;
      }
    }
    if (n == 1) sum = 1.0;
    rule.nodes[i] = x;
    rule.weights[i] = std::isfinite(sum) ? 1.0 / sum : 0.0;
  }
  return rule;
}

double HermiteExpansion::parseval_partial() const {
  double s = 0.0;
  double fact = 1.0;
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    if (j > 0) fact *= static_cast<double>(j);
    s += coefficients[j] * coefficients[j] / fact;
  }
  return s;
}

std::optional<int> rank_from_coefficients(const std::vector<double>& coefficients,
                                          double rank_tolerance) {
  if (coefficients.empty()) return std::nullopt;
  const double scale = std::max(1.0, std::abs(coefficients[0]));
  for (std::size_t j = 1; j < coefficients.size(); ++j) {
    if (std::abs(coefficients[j]) > rank_tolerance * scale) return static_cast<int>(j);
  }
  return std::nullopt;
}

namespace {

std::vector<double> quadrature_coefficients(const std::function<double(double)>& G, int J,
                                            const GaussHermiteRule& rule, double& g2) {
  std::vector<double> c(J + 1, 0.0);
  g2 = 0.0;
  const int n = static_cast<int>(rule.nodes.size());
  for (int i = 0; i < n; ++i) {
    const double x = rule.nodes[i];
    const double w = rule.weights[i];
    const double gx = G(x);
    g2 += w * gx * gx;
    double prev = 1.0, cur = x;
    for (int j = 0; j <= J; ++j) {
      const double hj = (j == 0) ? 1.0 : (j == 1 ? x : cur);
      c[j] += w * gx * hj;
      if (j >= 1) {
        const double next = x * cur - static_cast<double>(j) * prev;
        prev = cur;
        cur = next;
      }
    }
  }
  return c;
}

}  // namespace

HermiteExpansion expansion_coefficients(const std::function<double(double)>& G, int J,
                                        const QuadratureOptions& options) {
  if (J < 0) throw parameter_error("expansion_coefficients requires J >= 0");
  // Enough nodes that degree J+n polynomials are integrated exactly.
  int n = std::max(options.min_nodes, J + 1);

  double g2_prev = 0.0;
  std::vector<double> prev = quadrature_coefficients(G, J, gauss_hermite_rule(n), g2_prev);
  double diff = std::numeric_limits<double>::infinity();
  double g2 = g2_prev;
  int growth_streak = 0;

  while (n < options.max_nodes) {
    n *= 2;
    double g2_next = 0.0;
    std::vector<double> next = quadrature_coefficients(G, J, gauss_hermite_rule(n), g2_next);
    diff = 0.0;
    for (int j = 0; j <= J; ++j) diff = std::max(diff, std::abs(next[j] - prev[j]));
    // Integrability probe: the quadrature of G^2 must settle; sustained
    // geometric growth means G is not square integrable against phi.
    if (g2_next > 2.0 * g2 && g2_next > 1.0) {
      ++growth_streak;
    } else {
      growth_streak = 0;
    }
    if (!std::isfinite(g2_next) || growth_streak >= 2 || g2_next > 1e12) {
      throw integrability_error(
          "quadrature of G^2 diverges under refinement; G is not square integrable "
          "against the standard normal density");
    }
    prev = std::move(next);
    g2 = g2_next;
    if (diff <= options.tolerance) break;
  }

  HermiteExpansion exp;
  exp.coefficients = std::move(prev);
  exp.truncation_order = J;
  exp.achieved_tolerance = diff;
  exp.converged = diff <= options.tolerance;
  exp.hermite_rank = rank_from_coefficients(exp.coefficients, options.rank_tolerance);
  return exp;
}

std::vector<std::pair<int, double>> moments_as_hermite(int kappa) {
  if (kappa < 0) throw parameter_error("moments_as_hermite requires kappa >= 0");
  double kfact = 1.0;
  for (int i = 2; i <= kappa; ++i) kfact *= static_cast<double>(i);
  std::vector<std::pair<int, double>> terms;
  for (int m = 0; 2 * m <= kappa; ++m) {
    double denom = 1.0;  // 2^m m! (kappa - 2m)!
    for (int i = 1; i <= m; ++i) denom *= 2.0 * static_cast<double>(i);
    for (int i = 2; i <= kappa - 2 * m; ++i) denom *= static_cast<double>(i);
    terms.emplace_back(kappa - 2 * m, kfact / denom);
  }
  return terms;
}

HermiteExpansion level_excess_coefficients(double level, int J) {
  if (J < 0) throw parameter_error("level_excess_coefficients requires J >= 0");
  if (J > 160)
    throw parameter_error(
        "level_excess_coefficients: unnormalized C_j overflow beyond J ~ 160; "
        "use level_excess_parseval for large J");
  HermiteExpansion exp;
  exp.coefficients.resize(J + 1);
  exp.coefficients[0] = 1.0 - normal_cdf(level);
  for (int m = 1; m <= J; ++m)
    exp.coefficients[m] = normal_pdf(level) * hermite_eval(m - 1, level);
  exp.truncation_order = J;
  exp.hermite_rank = rank_from_coefficients(exp.coefficients);
  return exp;
}

double level_excess_parseval(double level, int J) {
  if (J < 0) throw parameter_error("level_excess_parseval requires J >= 0");
  const double c0 = 1.0 - normal_cdf(level);
  const double p = normal_pdf(level);
  double s = c0 * c0;
  if (J == 0) return s;
  // C_m^2/m! = phi^2 e_{m-1}^2 / m with e_k = H_k(level)/sqrt(k!).
  double ekm1 = 1.0, ek = level;
  s += p * p * ekm1 * ekm1 / 1.0;
  for (int m = 2; m <= J; ++m) {
    s += p * p * ek * ek / static_cast<double>(m);
    const double next = (level * ek - std::sqrt(static_cast<double>(m - 1)) * ekm1) /
                        std::sqrt(static_cast<double>(m));
    ekm1 = ek;
    ek = next;
  }
  return s;
}

}  // namespace lrfield
