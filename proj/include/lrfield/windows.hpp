#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lrfield {

// Envelope values are snapped to integers within this relative tolerance
// before floor/ceil: scaled boundary evaluation carries rounding noise while
// the defining infima/suprema are often exact integers (e.g. discs through
// lattice points).
inline constexpr double kSnapTolerance = 1e-9;

inline long snapped_floor(double v) {
  const double n = std::round(v);
  if (std::abs(v - n) <= kSnapTolerance * std::max(1.0, std::abs(v))) return static_cast<long>(n);
  return static_cast<long>(std::floor(v));
}

inline long snapped_ceil(double v) {
  const double n = std::round(v);
  if (std::abs(v - n) <= kSnapTolerance * std::max(1.0, std::abs(v))) return static_cast<long>(n);
  return static_cast<long>(std::ceil(v));
}

// One boundary function f_{q,1} on [a, b], piecewise smooth with finitely
// many declared jumps.  All evaluation is offered in homothety-scaled form:
// f_{q,r}(x) = r f_{q,1}(x/r).  inf/sup are taken over the closure of the
// requested interval (one-sided limits at jump points included), which
// matches the paper's half-open conventions for piecewise-continuous
// boundaries.
class Boundary {
 public:
  virtual ~Boundary() = default;
  virtual double eval(double x) const = 0;
  virtual double eval_scaled(double r, double x) const { return r * eval(x / r); }
  // inf/sup of f_{q,r} over [lo, hi] given in scaled coordinates.
  virtual double inf_scaled(double r, double lo, double hi) const = 0;
  virtual double sup_scaled(double r, double lo, double hi) const = 0;
  virtual std::vector<double> jumps() const { return {}; }
};

std::shared_ptr<const Boundary> make_constant_boundary(double y);
// Contiguous linear segments (xs strictly increasing; jumps where the y of
// one segment's end differs from the next segment's start).
struct LinearSegment {
  double x0, x1, y0, y1;
};
std::shared_ptr<const Boundary> make_piecewise_linear_boundary(std::vector<LinearSegment> segments);
// sign * sqrt(radius^2 - x^2) on [-radius, radius].
std::shared_ptr<const Boundary> make_semicircle_boundary(double radius, int sign);
// Arbitrary callable with declared jump points; envelopes are computed by
// dense sampling (256 points per unit interval) with jump insertion and one
// golden-section refinement around the best bracket.
std::shared_ptr<const Boundary> make_custom_boundary(std::function<double(double)> f,
                                                     std::vector<double> jumps);

// Observation window between two boundary graphs:
// Delta_2 = {(x, y): a <= x <= b, f_l(x) <= y <= f_u(x)} with a < 0 < b and
// the origin interior.
class Window2 {
 public:
  Window2(double a, double b, std::shared_ptr<const Boundary> lower,
          std::shared_ptr<const Boundary> upper, std::string shape_tag);

  static Window2 rectangle(double a, double b, double y_lo, double y_hi);
  static Window2 square();  // [-1, 1]^2, the configuration of the numeric study
  static Window2 disc(double radius = 1.0);
  // Simple polygon, each vertical line meeting it in one segment.
  static Window2 polygon(const std::vector<std::array<double, 2>>& vertices);
  static Window2 lshape();  // square with the top-right quadrant removed
  // [a,b] x [y_lo, *] with the upper boundary stepping from y1 to y2 at x = jump_x.
  static Window2 step_window(double a = -1.0, double b = 1.0, double y_lo = -1.0,
                             double y1 = 1.0, double y2 = 0.5, double jump_x = 0.25);
  static Window2 custom(double a, double b, std::function<double(double)> lower,
                        std::function<double(double)> upper, std::vector<double> lower_jumps,
                        std::vector<double> upper_jumps);

  double a() const { return a_; }
  double b() const { return b_; }
  const Boundary& lower() const { return *lower_; }
  const Boundary& upper() const { return *upper_; }
  const std::string& shape() const { return shape_; }

  double lower_r(double r, double x) const { return lower_->eval_scaled(r, x); }
  double upper_r(double r, double x) const { return upper_->eval_scaled(r, x); }

  // Closed membership x in Delta_2(r), with a small relative tolerance so
  // boundary grid points are kept.
  bool contains(double x, double y, double r = 1.0) const;

  // |Delta_2| by adaptive quadrature of f_u - f_l (split at jumps).
  double area(double tol = 1e-9) const;

 private:
  double a_, b_;
  std::shared_ptr<const Boundary> lower_, upper_;
  std::string shape_;
};

// Scaled view: evaluators for f_{q,r} and the scaled measure r^2 |Delta_2|.
struct ScaledWindow2 {
  const Window2* window;
  double r;
  double a() const { return window->a() * r; }
  double b() const { return window->b() * r; }
  double lower(double x) const { return window->lower_r(r, x); }
  double upper(double x) const { return window->upper_r(r, x); }
  double measure(double tol = 1e-9) const { return r * r * window->area(tol); }
};
ScaledWindow2 scale(const Window2& window, double r);

// f_r^(l)(i) = floor(inf f_{l,r} over the i-th column), f_r^(u)(i) = ceil(sup
// f_{u,r}); the column interval [i, i+1) is truncated to [ar, br] at the two
// edge columns.  A column beyond br (possible when br is not an integer and
// i = ceil(br)) is empty.
struct ColumnBounds {
  long lo = 0;
  long hi = -1;
  bool empty = true;
};
ColumnBounds column_bounds(const Window2& window, double r, long i);

struct ColumnRange {
  long i;
  long j_lo, j_hi;  // inclusive
};

// Q_2(Delta_2(r)) enumerated by columns.
class LatticeSet {
 public:
  int dimension = 2;
  double r = 1.0;
  std::vector<ColumnRange> columns;

  std::size_t size() const;
  bool contains(long i, long j) const;
  std::optional<ColumnRange> column(long i) const;
  // Visits (i, j) in ascending i, then ascending j.
  template <class F>
  void for_each(F&& f) const {
    for (const auto& c : columns)
      for (long j = c.j_lo; j <= c.j_hi; ++j) f(c.i, j);
  }
};
LatticeSet lattice(const Window2& window, double r);

// Covering structures of the discretisation argument: per-column cells
// A(r) = [i, i+1) x [f_r^(l)(i), f_r^(u)(i)] and the boundary rectangles
// S_{q,r}(i) spanning inf-to-sup of each boundary over the column.
struct ColumnCell {
  long i;
  double y_lo, y_hi;
};
struct CellList {
  std::vector<ColumnCell> a_cells;
  std::vector<ColumnCell> s_lower;
  std::vector<ColumnCell> s_upper;
  double a_area() const;
};
CellList covering_cells(const Window2& window, double r);

// ---------------------------------------------------------------------------
// n = 3: Delta_3 = {(x1, x2) in Delta_2, f_l(x1, x2) <= x3 <= f_u(x1, x2)}
// with sheet jump sets restricted to axis-aligned lines.

class Sheet {
 public:
  virtual ~Sheet() = default;
  virtual double eval(double x1, double x2) const = 0;
  virtual double eval_scaled(double r, double x1, double x2) const {
    return r * eval(x1 / r, x2 / r);
  }
  // inf/sup over P_2(r, i1, i2) = ([i1, i1+1) x [i2, i2+1]) intersected with
  // Delta_2(r); nullopt when the intersection is empty.
  virtual std::optional<std::pair<double, double>> range_on_cell(const Window2& base, double r,
                                                                 long i1, long i2) const = 0;
};

std::shared_ptr<const Sheet> make_constant_sheet(double z);
// sign * sqrt(radius^2 - x1^2 - x2^2) over the disc of the same radius.
std::shared_ptr<const Sheet> make_ball_sheet(double radius, int sign);
std::shared_ptr<const Sheet> make_custom_sheet(std::function<double(double, double)> f,
                                               std::vector<double> jump_x1,
                                               std::vector<double> jump_x2);

class Window3 {
 public:
  Window3(Window2 base, std::shared_ptr<const Sheet> lower, std::shared_ptr<const Sheet> upper,
          std::string shape_tag);
  static Window3 box();  // [-1, 1]^3
  static Window3 ball(double radius = 1.0);
  static Window3 prism(Window2 base, double z_lo, double z_hi);

  const Window2& base() const { return base_; }
  const Sheet& lower() const { return *lower_; }
  const Sheet& upper() const { return *upper_; }
  const std::string& shape() const { return shape_; }

  bool contains(double x1, double x2, double x3, double r = 1.0) const;
  double area(double tol = 1e-6) const;  // |Delta_3| by sampling quadrature

 private:
  Window2 base_;
  std::shared_ptr<const Sheet> lower_, upper_;
  std::string shape_;
};

struct Column3 {
  long i1, i2;
  long k_lo, k_hi;  // inclusive
};
class LatticeSet3 {
 public:
  double r = 1.0;
  std::vector<Column3> columns;
  std::size_t size() const;
  template <class F>
  void for_each(F&& f) const {
    for (const auto& c : columns)
      for (long k = c.k_lo; k <= c.k_hi; ++k) f(c.i1, c.i2, k);
  }
};
LatticeSet3 lattice(const Window3& window, double r);

}  // namespace lrfield
