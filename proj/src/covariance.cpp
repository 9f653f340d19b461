#include "lrfield/covariance.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lrfield/errors.hpp"

namespace lrfield {

double SlowlyVarying::operator()(double r) const {
  switch (kind) {
    case Kind::constant_one:
      return 1.0;
    case Kind::log_power:
      return std::pow(std::log(std::numbers::e + r), p);
  }
  return 1.0;
}

std::string SlowlyVarying::describe() const {
  if (kind == Kind::constant_one) return "1";
  std::ostringstream os;
  os << "log(e+r)^" << p;
  return os.str();
}

CovarianceModel CovarianceModel::power_law(double alpha, int n, SlowlyVarying L) {
  CovarianceModel m;
  m.family = CovFamily::power_law;
  m.alpha = alpha;
  m.dimension = n;
  m.slowly_varying = L;
  m.validate();
  return m;
}

CovarianceModel CovarianceModel::cauchy(double theta, double beta, int n) {
  CovarianceModel m;
  m.family = CovFamily::cauchy;
  m.theta = theta;
  m.beta = beta;
  m.dimension = n;
  m.validate();
  return m;
}

CovarianceModel CovarianceModel::bessel(double v, int n) {
  CovarianceModel m;
  m.family = CovFamily::bessel;
  m.v = v;
  m.dimension = n;
  m.validate();
  return m;
}

CovarianceModel CovarianceModel::constant_test(int n) {
  CovarianceModel m;
  m.family = CovFamily::constant_test;
  m.dimension = n;
  return m;
}

void CovarianceModel::validate() const {
  if (dimension < 1 || dimension > 3) throw parameter_error("covariance dimension must be 1..3");
  switch (family) {
    case CovFamily::power_law:
      if (!(alpha > 0.0)) throw parameter_error("power_law requires alpha > 0");
      break;
    case CovFamily::cauchy:
      if (!(theta > 0.0 && theta <= 2.0))
        throw parameter_error("cauchy requires theta in (0, 2]");
      if (!(beta > 0.0)) throw parameter_error("cauchy requires beta > 0");
      break;
    case CovFamily::bessel:
      if (!(v >= 0.0 && v < 0.5)) throw parameter_error("bessel requires v in [0, 1/2)");
      break;
    case CovFamily::constant_test:
      break;
  }
}

double CovarianceModel::lrd_exponent() const {
  switch (family) {
    case CovFamily::power_law:
      return alpha;
    case CovFamily::cauchy:
      return beta;
    case CovFamily::bessel:
      return v + 0.5;
    case CovFamily::constant_test:
      return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

std::string CovarianceModel::describe() const {
  std::ostringstream os;
  switch (family) {
    case CovFamily::power_law:
      os << "power_law alpha=" << alpha << " L0=" << slowly_varying.describe();
      break;
    case CovFamily::cauchy:
      os << "cauchy theta=" << theta << " beta=" << beta;
      break;
    case CovFamily::bessel:
      os << "bessel v=" << v;
      break;
    case CovFamily::constant_test:
      os << "constant_test";
      break;
  }
  return os.str();
}

namespace {

double bessel_j_series(double v, double x) {
  // J_v(x) = (x/2)^v sum_k (-1)^k (x^2/4)^k / (k! Gamma(v+k+1))
  const double q = x * x / 4.0;
  double term = std::pow(x / 2.0, v) / std::tgamma(v + 1.0);
  double sum = term;
  for (int k = 1; k <= 80; ++k) {
    term *= -q / (static_cast<double>(k) * (v + static_cast<double>(k)));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

double bessel_j_asymptotic(double v, double x) {
  // Hankel expansion: J_v(x) = sqrt(2/(pi x)) (P cos w - Q sin w),
  // w = x - (v/2 + 1/4) pi, with the series truncated at its smallest term.
  const double w = x - (0.5 * v + 0.25) * std::numbers::pi;
  const double mu = 4.0 * v * v;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double prev_abs = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 40; ++k) {
    const double odd = static_cast<double>(2 * k - 1);
    term *= (mu - odd * odd) / (8.0 * x * static_cast<double>(k));
    if (std::abs(term) >= prev_abs) break;  // divergent tail reached
    prev_abs = std::abs(term);
    if (k % 2 == 1) {
      q += (k % 4 == 1) ? term : -term;
    } else {
      p += (k % 4 == 2) ? -term : term;
    }
    if (std::abs(term) < 1e-17) break;
  }
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(w) - q * std::sin(w));
}

}  // namespace

double bessel_j(double v, double x) {
  if (x < 0.0) throw parameter_error("bessel_j requires x >= 0");
  if (x == 0.0) return v == 0.0 ? 1.0 : 0.0;
  return x < 12.0 ? bessel_j_series(v, x) : bessel_j_asymptotic(v, x);
}

double cov_eval(const CovarianceModel& model, double r) {
  if (r < 0.0) throw parameter_error("cov_eval requires r >= 0");
  model.validate();
  switch (model.family) {
    case CovFamily::power_law: {
      if (r == 0.0) return 1.0;
      const double tail = std::pow(r, -model.alpha) * model.slowly_varying(r);
      return std::min(1.0, tail);
    }
    case CovFamily::cauchy:
      return std::pow(1.0 + std::pow(r, model.theta), -model.beta / model.theta);
    case CovFamily::bessel: {
      if (r == 0.0) return 1.0;  // removable singularity
      const double v = model.v;
      return std::pow(2.0, v) * std::tgamma(v + 1.0) * bessel_j(v, r) / std::pow(r, v);
    }
    case CovFamily::constant_test:
      return std::max(0.0, 1.0 - r);
  }
  return 0.0;
}

double spectral_density_c1(int n, double alpha) {
  if (!(alpha > 0.0 && alpha < static_cast<double>(n)))
    throw parameter_error("spectral_density requires alpha in (0, n)");
  return std::tgamma((static_cast<double>(n) - alpha) / 2.0) /
         (std::pow(2.0, alpha) * std::pow(std::numbers::pi, static_cast<double>(n) / 2.0) *
          std::tgamma(alpha / 2.0));
}

double spectral_density(int n, double alpha, const SlowlyVarying& L, double lambda_norm) {
  if (!(lambda_norm > 0.0)) throw parameter_error("spectral_density requires |lambda| > 0");
  return spectral_density_c1(n, alpha) * std::pow(lambda_norm, alpha - static_cast<double>(n)) *
         L(1.0 / lambda_norm);
}

namespace {

// Composite Simpson of |B(r)| r^(n-1) on [lo, hi]; the Bessel family
// oscillates with period 2 pi, so the step stays well below that.
double abs_tail_integral(const CovarianceModel& model, double lo, double hi) {
  const double step = 0.125;
  const auto f = [&](double r) {
    return std::abs(cov_eval(model, r)) * std::pow(r, model.dimension - 1);
  };
  const long panels = static_cast<long>(std::ceil((hi - lo) / step));
  const double h = (hi - lo) / static_cast<double>(panels);
  double s = f(lo) + f(hi);
  for (long i = 1; i < panels; ++i) s += 2.0 * (1.0 + (i % 2)) * f(lo + h * static_cast<double>(i));
  return s * h / 3.0;
}

}  // namespace

bool lrd_check(const CovarianceModel& model) {
  const double i1 = abs_tail_integral(model, 0.0, 1e2);
  const double i2 = i1 + abs_tail_integral(model, 1e2, 1e3);
  const double i3 = i2 + abs_tail_integral(model, 1e3, 1e4);
  return i2 >= 1.5 * i1 && i3 >= 1.5 * i2;
}

}  // namespace lrfield
