#pragma once

#include <span>
#include <string>

namespace lrfield {

enum class WeightFamily { constant, polynomial_power, log_weighted, one_plus_sum_sq };

// Weight g(x) together with its diagonal values g(r 1_n) and limit shape
// g*(u) = lim g(ru)/g(r 1_n).  The catalogue follows the families named in
// the convergence conditions:
//   constant c                      g* = 1
//   x^mu1 y^mu2                     g* = u^mu1 v^mu2          (n = 2)
//   x y log(mu1 + x) log(mu2 + y)   g* = u v                  (n = 2)
//   1 + (x_1 + ... + x_n)^2         g* = (u_1 + ... + u_n)^2 / n^2
struct WeightFunction {
  WeightFamily family = WeightFamily::constant;
  double c = 1.0;
  double mu1 = 1.0, mu2 = 1.0;

  static WeightFunction constant(double c = 1.0);
  static WeightFunction polynomial_power(int mu1, int mu2);
  static WeightFunction log_weighted(double mu1, double mu2);
  static WeightFunction one_plus_sum_sq();

  double operator()(std::span<const double> x) const;
  double at_diag(double r, int n) const;
  double limit_shape(std::span<const double> u) const;
  std::string describe() const;
};

}  // namespace lrfield
