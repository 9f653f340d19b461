#include "lrfield/weights.hpp"

#include <cmath>
#include <sstream>

#include "lrfield/errors.hpp"

namespace lrfield {

WeightFunction WeightFunction::constant(double c) {
  if (c == 0.0) throw parameter_error("constant weight must be nonzero");
  WeightFunction g;
  g.family = WeightFamily::constant;
  g.c = c;
  return g;
}

WeightFunction WeightFunction::polynomial_power(int mu1, int mu2) {
  WeightFunction g;
  g.family = WeightFamily::polynomial_power;
  g.mu1 = mu1;
  g.mu2 = mu2;
  return g;
}

WeightFunction WeightFunction::log_weighted(double mu1, double mu2) {
  WeightFunction g;
  g.family = WeightFamily::log_weighted;
  g.mu1 = mu1;
  g.mu2 = mu2;
  return g;
}

WeightFunction WeightFunction::one_plus_sum_sq() {
  WeightFunction g;
  g.family = WeightFamily::one_plus_sum_sq;
  return g;
}

namespace {

double int_pow(double x, int k) {
  double v = 1.0;
  for (int i = 0; i < std::abs(k); ++i) v *= x;
  return k >= 0 ? v : 1.0 / v;
}

}  // namespace

double WeightFunction::operator()(std::span<const double> x) const {
  switch (family) {
    case WeightFamily::constant:
      return c;
    case WeightFamily::polynomial_power:
      if (x.size() != 2) throw parameter_error("polynomial_power weight is two-dimensional");
      return int_pow(x[0], static_cast<int>(mu1)) * int_pow(x[1], static_cast<int>(mu2));
    case WeightFamily::log_weighted: {
      if (x.size() != 2) throw parameter_error("log_weighted weight is two-dimensional");
      if (mu1 + x[0] <= 0.0 || mu2 + x[1] <= 0.0)
        throw parameter_error("log_weighted weight needs mu + x > 0 over the window");
      return x[0] * x[1] * std::log(mu1 + x[0]) * std::log(mu2 + x[1]);
    }
    case WeightFamily::one_plus_sum_sq: {
      double s = 0.0;
      for (double v : x) s += v;
      return 1.0 + s * s;
    }
  }
  return 1.0;
}

double WeightFunction::at_diag(double r, int n) const {
  switch (family) {
    case WeightFamily::constant:
      return c;
    case WeightFamily::polynomial_power:
      return int_pow(r, static_cast<int>(mu1)) * int_pow(r, static_cast<int>(mu2));
    case WeightFamily::log_weighted:
      if (mu1 + r <= 0.0 || mu2 + r <= 0.0)
        throw parameter_error("log_weighted weight needs mu + r > 0");
      return r * r * std::log(mu1 + r) * std::log(mu2 + r);
    case WeightFamily::one_plus_sum_sq: {
      const double s = static_cast<double>(n) * r;
      return 1.0 + s * s;
    }
  }
  return 1.0;
}

double WeightFunction::limit_shape(std::span<const double> u) const {
  switch (family) {
    case WeightFamily::constant:
      return 1.0;
    case WeightFamily::polynomial_power:
      if (u.size() != 2) throw parameter_error("polynomial_power weight is two-dimensional");
      return int_pow(u[0], static_cast<int>(mu1)) * int_pow(u[1], static_cast<int>(mu2));
    case WeightFamily::log_weighted:
      if (u.size() != 2) throw parameter_error("log_weighted weight is two-dimensional");
      return u[0] * u[1];
    case WeightFamily::one_plus_sum_sq: {
      double s = 0.0;
      for (double v : u) s += v;
      return s * s / (static_cast<double>(u.size()) * static_cast<double>(u.size()));
    }
  }
  return 1.0;
}

std::string WeightFunction::describe() const {
  std::ostringstream os;
  switch (family) {
    case WeightFamily::constant:
      os << "constant c=" << c;
      break;
    case WeightFamily::polynomial_power:
      os << "x^" << mu1 << " y^" << mu2;
      break;
    case WeightFamily::log_weighted:
      os << "xy log(" << mu1 << "+x)log(" << mu2 << "+y)";
      break;
    case WeightFamily::one_plus_sum_sq:
      os << "1+(sum x)^2";
      break;
  }
  return os.str();
}

}  // namespace lrfield
