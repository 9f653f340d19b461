#pragma once

#include <string>

namespace lrfield {

// L(r) slowly varying at infinity: L(tr)/L(r) -> 1 for every fixed t > 0.
struct SlowlyVarying {
  enum class Kind { constant_one, log_power };
  Kind kind = Kind::constant_one;
  double p = 0.0;  // exponent for log_power: (log(e + r))^p

  double operator()(double r) const;
  static SlowlyVarying one() { return {}; }
  static SlowlyVarying log_power(double p) { return {Kind::log_power, p}; }
  std::string describe() const;
};

enum class CovFamily { power_law, cauchy, bessel, constant_test };

// Isotropic covariance model B(r) with B(0) = 1 and |B| <= 1.
//
//   power_law:      B(r) = min(1, r^-alpha L0(r)).  An asymptotic tail model:
//                   it realises the hyperbolic decay exactly but is not a
//                   positive definite function, so it is meant for
//                   normalisation and decay analysis rather than simulation.
//   cauchy:         B(r) = (1 + r^theta)^(-beta/theta), theta in (0,2].
//   bessel:         B(r) = 2^v Gamma(v+1) J_v(r) / r^v, v in [0, 1/2);
//                   cyclic long-range dependence, valid on the plane.
//   constant_test:  B(r) = max(0, 1 - r), the triangular hat; positive
//                   definite only along a line, used for exactness margins.
struct CovarianceModel {
  CovFamily family = CovFamily::bessel;
  int dimension = 2;
  SlowlyVarying slowly_varying;
  double alpha = 0.5;  // power_law decay exponent
  double v = 0.0;      // bessel order
  double theta = 2.0;  // cauchy shape
  double beta = 0.5;   // cauchy decay exponent

  static CovarianceModel power_law(double alpha, int n, SlowlyVarying L = {});
  static CovarianceModel cauchy(double theta, double beta, int n);
  static CovarianceModel bessel(double v, int n = 2);
  static CovarianceModel constant_test(int n = 2);

  void validate() const;
  // Hyperbolic decay exponent of |B|: alpha, beta, v + 1/2 by family.
  double lrd_exponent() const;
  std::string describe() const;
};

double cov_eval(const CovarianceModel& model, double r);

// c1(n, alpha) = Gamma((n-alpha)/2) / (2^alpha pi^(n/2) Gamma(alpha/2)).
double spectral_density_c1(int n, double alpha);

// Isotropic spectral density c1(n,alpha) |lambda|^(alpha-n) L(1/|lambda|).
double spectral_density(int n, double alpha, const SlowlyVarying& L, double lambda_norm);

// True iff the covariance tail is non-integrable, decided numerically by the
// growth of the partial integrals of |B(r)| r^(n-1) across R = 1e2, 1e3, 1e4.
bool lrd_check(const CovarianceModel& model);

// Bessel function of the first kind, by ascending series for x < 12 and the
// Hankel asymptotic expansion beyond (the two agree to ~1e-11 at the switch).
double bessel_j(double v, double x);

}  // namespace lrfield
