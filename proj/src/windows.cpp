#include "lrfield/windows.hpp"

#include <algorithm>
#include <cmath>

#include "lrfield/errors.hpp"

namespace lrfield {

namespace {

constexpr double kGolden = 0.6180339887498949;

double golden_refine(const std::function<double(double)>& f, double a, double b, bool maximize) {
  double best = maximize ? std::max(f(a), f(b)) : std::min(f(a), f(b));
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 60 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
    const bool take_left = maximize ? (fc > fd) : (fc < fd);
    if (take_left) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
    }
    best = maximize ? std::max({best, fc, fd}) : std::min({best, fc, fd});
  }
  return best;
}

double simpson(const std::function<double(double)>& f, double a, double m, double b, double fa,
               double fm, double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, lm, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson(f, m, rm, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  if (b <= a) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, m, b, fa, fm, fb, whole, tol, 48);
}

class ConstantBoundary final : public Boundary {
 public:
  explicit ConstantBoundary(double y) : y_(y) {}
  double eval(double) const override { return y_; }
  double eval_scaled(double r, double) const override { return r * y_; }
  double inf_scaled(double r, double, double) const override { return r * y_; }
  double sup_scaled(double r, double, double) const override { return r * y_; }

 private:
  double y_;
};

class PiecewiseLinearBoundary final : public Boundary {
 public:
  explicit PiecewiseLinearBoundary(std::vector<LinearSegment> segments)
      : segs_(std::move(segments)) {
    if (segs_.empty()) throw parameter_error("piecewise linear boundary needs segments");
    for (std::size_t k = 0; k + 1 < segs_.size(); ++k)
      if (std::abs(segs_[k].x1 - segs_[k + 1].x0) > 1e-12)
        throw parameter_error("piecewise linear segments must be contiguous");
  }

  double eval(double x) const override { return eval_scaled(1.0, x); }

  double eval_scaled(double r, double x) const override {
    // Right-continuous at internal breakpoints.
    const LinearSegment* s = &segs_.back();
    for (const auto& seg : segs_) {
      if (x < seg.x1 * r || (&seg == &segs_.back())) {
        if (x >= seg.x0 * r || &seg == &segs_.front()) {
          s = &seg;
          break;
        }
      }
    }
    return value_on(*s, r, x);
  }

  double inf_scaled(double r, double lo, double hi) const override {
    return extremum(r, lo, hi, false);
  }
  double sup_scaled(double r, double lo, double hi) const override {
    return extremum(r, lo, hi, true);
  }

  std::vector<double> jumps() const override {
    std::vector<double> js;
    for (std::size_t k = 0; k + 1 < segs_.size(); ++k)
      if (std::abs(segs_[k].y1 - segs_[k + 1].y0) > 0.0) js.push_back(segs_[k].x1);
    return js;
  }

 private:
  static double value_on(const LinearSegment& s, double r, double x) {
    if (s.x1 == s.x0) return r * s.y0;
    const double slope = (s.y1 - s.y0) / (s.x1 - s.x0);
    return r * s.y0 + slope * (x - r * s.x0);
  }

  double extremum(double r, double lo, double hi, bool maximize) const {
    // Only segments with a positive-length overlap contribute: a segment
    // merely touching the interval at one end would inject the one-sided
    // limit from outside (wrong branch when a jump sits exactly on a column
    // boundary).
    bool found = false;
    double best = 0.0;
    for (const auto& s : segs_) {
      const double sx0 = s.x0 * r, sx1 = s.x1 * r;
      const double c0 = std::max(sx0, lo), c1 = std::min(sx1, hi);
      if (c0 >= c1) continue;
      for (double c : {c0, c1}) {
        const double v = value_on(s, r, c);
        if (!found || (maximize ? v > best : v < best)) best = v, found = true;
      }
    }
    if (!found) {
      // Degenerate or off-domain interval: the right-continuous value.
      return eval_scaled(r, std::clamp(lo, segs_.front().x0 * r, segs_.back().x1 * r));
    }
    return best;
  }

  std::vector<LinearSegment> segs_;
};

class SemicircleBoundary final : public Boundary {
 public:
  SemicircleBoundary(double radius, int sign) : radius_(radius), sign_(sign) {
    if (!(radius > 0.0) || (sign != 1 && sign != -1))
      throw parameter_error("semicircle boundary needs radius > 0 and sign +-1");
  }

  double eval(double x) const override { return eval_scaled(1.0, x); }

  double eval_scaled(double r, double x) const override {
    const double rho = radius_ * r;
    return sign_ * std::sqrt(std::max(0.0, rho * rho - x * x));
  }

  double inf_scaled(double r, double lo, double hi) const override {
    const auto [mn, mx] = range(r, lo, hi);
    return mn;
  }
  double sup_scaled(double r, double lo, double hi) const override {
    const auto [mn, mx] = range(r, lo, hi);
    return mx;
  }

 private:
  std::pair<double, double> range(double r, double lo, double hi) const {
    const double rho = radius_ * r;
    lo = std::clamp(lo, -rho, rho);
    hi = std::clamp(hi, -rho, rho);
    const double near = std::clamp(0.0, lo, hi);
    const double far = std::max(std::abs(lo), std::abs(hi));
    const double big = std::sqrt(std::max(0.0, rho * rho - near * near));
    const double small = std::sqrt(std::max(0.0, rho * rho - far * far));
    return sign_ > 0 ? std::make_pair(small, big) : std::make_pair(-big, -small);
  }

  double radius_;
  int sign_;
};

class CustomBoundary final : public Boundary {
 public:
  CustomBoundary(std::function<double(double)> f, std::vector<double> jumps)
      : f_(std::move(f)), jumps_(std::move(jumps)) {
    std::sort(jumps_.begin(), jumps_.end());
  }

  double eval(double x) const override { return f_(x); }

  double inf_scaled(double r, double lo, double hi) const override {
    return envelope(r, lo, hi, false);
  }
  double sup_scaled(double r, double lo, double hi) const override {
    return envelope(r, lo, hi, true);
  }

  std::vector<double> jumps() const override { return jumps_; }

 private:
  double envelope(double r, double lo, double hi, bool maximize) const {
    const auto fr = [&](double x) { return eval_scaled(r, x); };
    if (hi <= lo) return fr(lo);
    std::vector<double> xs;
    const int n = std::max(2, static_cast<int>(std::ceil(256.0 * (hi - lo))));
    xs.reserve(n + 8);
    for (int k = 0; k <= n; ++k)
      xs.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n));
    for (double j : jumps_) {
      const double xj = j * r;
      if (xj <= lo || xj >= hi) continue;
      const double delta = 1e-9 * std::max(1.0, std::abs(xj));
      xs.push_back(std::max(lo, xj - delta));
      xs.push_back(xj);
      xs.push_back(std::min(hi, xj + delta));
    }
    std::sort(xs.begin(), xs.end());
    std::size_t best_k = 0;
    double best = fr(xs[0]);
    for (std::size_t k = 1; k < xs.size(); ++k) {
      const double v = fr(xs[k]);
      if (maximize ? v > best : v < best) best = v, best_k = k;
    }
    const double bl = xs[best_k > 0 ? best_k - 1 : 0];
    const double bh = xs[std::min(best_k + 1, xs.size() - 1)];
    const double refined = golden_refine(fr, bl, bh, maximize);
    return maximize ? std::max(best, refined) : std::min(best, refined);
  }

  std::function<double(double)> f_;
  std::vector<double> jumps_;
};

}  // namespace

std::shared_ptr<const Boundary> make_constant_boundary(double y) {
  return std::make_shared<ConstantBoundary>(y);
}

std::shared_ptr<const Boundary> make_piecewise_linear_boundary(std::vector<LinearSegment> segments) {
  return std::make_shared<PiecewiseLinearBoundary>(std::move(segments));
}

std::shared_ptr<const Boundary> make_semicircle_boundary(double radius, int sign) {
  return std::make_shared<SemicircleBoundary>(radius, sign);
}

std::shared_ptr<const Boundary> make_custom_boundary(std::function<double(double)> f,
                                                     std::vector<double> jumps) {
  return std::make_shared<CustomBoundary>(std::move(f), std::move(jumps));
}

Window2::Window2(double a, double b, std::shared_ptr<const Boundary> lower,
                 std::shared_ptr<const Boundary> upper, std::string shape_tag)
    : a_(a), b_(b), lower_(std::move(lower)), upper_(std::move(upper)), shape_(std::move(shape_tag)) {
  if (!(a_ < 0.0 && 0.0 < b_)) throw parameter_error("window requires a < 0 < b");
  if (!(lower_->eval(0.0) < 0.0 && upper_->eval(0.0) > 0.0))
    throw parameter_error("window must contain the origin in its interior");
  for (int k = 1; k < 64; ++k) {
    const double x = a_ + (b_ - a_) * static_cast<double>(k) / 64.0;
    if (!(lower_->eval(x) < upper_->eval(x)))
      throw parameter_error("window requires f_l < f_u on the interior");
  }
}

Window2 Window2::rectangle(double a, double b, double y_lo, double y_hi) {
  return Window2(a, b, make_constant_boundary(y_lo), make_constant_boundary(y_hi), "rectangle");
}

Window2 Window2::square() { return rectangle(-1.0, 1.0, -1.0, 1.0); }

Window2 Window2::disc(double radius) {
  return Window2(-radius, radius, make_semicircle_boundary(radius, -1),
                 make_semicircle_boundary(radius, +1), "disc");
}

Window2 Window2::polygon(const std::vector<std::array<double, 2>>& vertices) {
  if (vertices.size() < 3) throw parameter_error("polygon needs at least 3 vertices");
  std::vector<double> xs;
  for (const auto& v : vertices) xs.push_back(v[0]);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double p, double q) { return std::abs(p - q) < 1e-12; }),
           xs.end());
  if (xs.size() < 2) throw parameter_error("polygon is degenerate");

  struct Edge {
    double x0, y0, x1, y1;
  };
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const auto& p = vertices[k];
    const auto& q = vertices[(k + 1) % vertices.size()];
    if (std::abs(p[0] - q[0]) < 1e-12) continue;  // vertical edges become jumps
    if (p[0] < q[0])
      edges.push_back({p[0], p[1], q[0], q[1]});
    else
      edges.push_back({q[0], q[1], p[0], p[1]});
  }

  const auto edge_y = [](const Edge& e, double x) {
    return e.y0 + (e.y1 - e.y0) * (x - e.x0) / (e.x1 - e.x0);
  };

  std::vector<LinearSegment> upper_segs, lower_segs;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double xm = 0.5 * (xs[k] + xs[k + 1]);
    const Edge* top = nullptr;
    const Edge* bot = nullptr;
    for (const auto& e : edges) {
      if (e.x0 > xm || e.x1 < xm) continue;
      const double y = edge_y(e, xm);
      if (!top || y > edge_y(*top, xm)) top = &e;
      if (!bot || y < edge_y(*bot, xm)) bot = &e;
    }
    if (!top || !bot || top == bot)
      throw parameter_error("polygon is not representable between two boundary graphs");
    upper_segs.push_back({xs[k], xs[k + 1], edge_y(*top, xs[k]), edge_y(*top, xs[k + 1])});
    lower_segs.push_back({xs[k], xs[k + 1], edge_y(*bot, xs[k]), edge_y(*bot, xs[k + 1])});
  }
  return Window2(xs.front(), xs.back(), make_piecewise_linear_boundary(std::move(lower_segs)),
                 make_piecewise_linear_boundary(std::move(upper_segs)), "polygon");
}

Window2 Window2::lshape() {
  auto w = polygon({{{-1.0, -1.0}}, {{1.0, -1.0}}, {{1.0, 0.25}}, {{0.25, 0.25}},
                    {{0.25, 1.0}}, {{-1.0, 1.0}}});
  return Window2(w.a(), w.b(), w.lower_, w.upper_, "lshape");
}

Window2 Window2::step_window(double a, double b, double y_lo, double y1, double y2, double jump_x) {
  if (!(a < jump_x && jump_x < b)) throw parameter_error("step jump must lie inside (a, b)");
  std::vector<LinearSegment> up = {{a, jump_x, y1, y1}, {jump_x, b, y2, y2}};
  return Window2(a, b, make_constant_boundary(y_lo), make_piecewise_linear_boundary(std::move(up)),
                 "step");
}

Window2 Window2::custom(double a, double b, std::function<double(double)> lower,
                        std::function<double(double)> upper, std::vector<double> lower_jumps,
                        std::vector<double> upper_jumps) {
  return Window2(a, b, make_custom_boundary(std::move(lower), std::move(lower_jumps)),
                 make_custom_boundary(std::move(upper), std::move(upper_jumps)), "custom");
}

bool Window2::contains(double x, double y, double r) const {
  const double eps = 1e-9 * std::max(1.0, r);
  const double ar = a_ * r, br = b_ * r;
  if (x < ar - eps || x > br + eps) return false;
  const double xc = std::clamp(x, ar, br);
  return y >= lower_->eval_scaled(r, xc) - eps && y <= upper_->eval_scaled(r, xc) + eps;
}

double Window2::area(double tol) const {
  std::vector<double> cuts = {a_, b_};
  for (double j : lower_->jumps()) cuts.push_back(j);
  for (double j : upper_->jumps()) cuts.push_back(j);
  std::sort(cuts.begin(), cuts.end());
  const auto width = [&](double x) { return upper_->eval(x) - lower_->eval(x); };
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
    total += adaptive_simpson(width, cuts[k], cuts[k + 1], tol / static_cast<double>(cuts.size()));
  return total;
}

ScaledWindow2 scale(const Window2& window, double r) {
  if (!(r > 0.0)) throw parameter_error("scale requires r > 0");
  return ScaledWindow2{&window, r};
}

ColumnBounds column_bounds(const Window2& window, double r, long i) {
  if (!(r > 0.0)) throw parameter_error("column_bounds requires r > 0");
  const double ar = window.a() * r, br = window.b() * r;
  const long i_min = snapped_floor(ar), i_max = snapped_ceil(br);
  if (i < i_min || i > i_max) throw index_error("column index outside [floor(ar), ceil(br)]");
  // Edge-interval truncation: the first and last columns only see the part of
  // [i, i+1) inside [ar, br].
  const double lo = std::max(static_cast<double>(i), ar);
  const double hi = std::min(static_cast<double>(i + 1), br);
  ColumnBounds cb;
  if (lo > hi) return cb;  // column entirely beyond br
  cb.lo = snapped_floor(window.lower().inf_scaled(r, lo, hi));
  cb.hi = snapped_ceil(window.upper().sup_scaled(r, lo, hi));
  cb.empty = false;
  return cb;
}

std::size_t LatticeSet::size() const {
  std::size_t n = 0;
  for (const auto& c : columns) n += static_cast<std::size_t>(c.j_hi - c.j_lo + 1);
  return n;
}

std::optional<ColumnRange> LatticeSet::column(long i) const {
  auto it = std::lower_bound(columns.begin(), columns.end(), i,
                             [](const ColumnRange& c, long key) { return c.i < key; });
  if (it == columns.end() || it->i != i) return std::nullopt;
  return *it;
}

bool LatticeSet::contains(long i, long j) const {
  const auto c = column(i);
  return c && j >= c->j_lo && j <= c->j_hi;
}

LatticeSet lattice(const Window2& window, double r) {
  if (!(r > 0.0)) throw parameter_error("lattice requires r > 0");
  LatticeSet set;
  set.dimension = 2;
  set.r = r;
  const long i_min = snapped_floor(window.a() * r);
  const long i_max = snapped_ceil(window.b() * r);
  for (long i = i_min; i <= i_max; ++i) {
    const ColumnBounds cb = column_bounds(window, r, i);
    if (cb.empty || cb.lo > cb.hi) continue;
    set.columns.push_back({i, cb.lo, cb.hi});
  }
  return set;
}

double CellList::a_area() const {
  double s = 0.0;
  for (const auto& c : a_cells) s += c.y_hi - c.y_lo;
  return s;
}

CellList covering_cells(const Window2& window, double r) {
  if (!(r > 0.0)) throw parameter_error("covering_cells requires r > 0");
  CellList cells;
  const double ar = window.a() * r, br = window.b() * r;
  const long i_min = snapped_floor(ar), i_max = snapped_ceil(br);
  for (long i = i_min; i <= i_max; ++i) {
    const double lo = std::max(static_cast<double>(i), ar);
    const double hi = std::min(static_cast<double>(i + 1), br);
    if (lo > hi) continue;
    const ColumnBounds cb = column_bounds(window, r, i);
    cells.a_cells.push_back(
        {i, static_cast<double>(cb.lo), static_cast<double>(cb.hi)});
    cells.s_lower.push_back(
        {i, window.lower().inf_scaled(r, lo, hi), window.lower().sup_scaled(r, lo, hi)});
    cells.s_upper.push_back(
        {i, window.upper().inf_scaled(r, lo, hi), window.upper().sup_scaled(r, lo, hi)});
  }
  return cells;
}

// ---------------------------------------------------------------------------
// n = 3

namespace {

// Sample x positions across the cell's x extent inside [ar, br], with the
// base boundary jump points inserted.
std::vector<double> cell_x_samples(const Window2& base, double r, long i1, int n) {
  const double ar = base.a() * r, br = base.b() * r;
  const double lo = std::max(static_cast<double>(i1), ar);
  const double hi = std::min(static_cast<double>(i1 + 1), br);
  std::vector<double> xs;
  if (lo > hi) return xs;
  for (int k = 0; k <= n; ++k)
    xs.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n));
  for (const auto* b : {&base.lower(), &base.upper()}) {
    for (double j : b->jumps()) {
      const double xj = j * r;
      if (xj <= lo || xj >= hi) continue;
      const double d = 1e-9 * std::max(1.0, std::abs(xj));
      xs.push_back(xj - d);
      xs.push_back(xj);
      xs.push_back(xj + d);
    }
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

// True if ([i1, i1+1) x [i2, i2+1]) intersects Delta_2(r), probed on a dense
// x sample.
bool p2_nonempty(const Window2& base, double r, long i1, long i2) {
  const double eps = 1e-9 * std::max(1.0, r);
  for (double x : cell_x_samples(base, r, i1, 64)) {
    const double fl = base.lower_r(r, x);
    const double fu = base.upper_r(r, x);
    if (fl <= static_cast<double>(i2 + 1) + eps && fu >= static_cast<double>(i2) - eps) return true;
  }
  return false;
}

class ConstantSheet final : public Sheet {
 public:
  explicit ConstantSheet(double z) : z_(z) {}
  double eval(double, double) const override { return z_; }
  double eval_scaled(double r, double, double) const override { return r * z_; }
  std::optional<std::pair<double, double>> range_on_cell(const Window2& base, double r, long i1,
                                                         long i2) const override {
    if (!p2_nonempty(base, r, i1, i2)) return std::nullopt;
    return std::make_pair(r * z_, r * z_);
  }

 private:
  double z_;
};

class BallSheet final : public Sheet {
 public:
  BallSheet(double radius, int sign) : radius_(radius), sign_(sign) {}

  double eval(double x1, double x2) const override {
    return sign_ * std::sqrt(std::max(0.0, radius_ * radius_ - x1 * x1 - x2 * x2));
  }
  double eval_scaled(double r, double x1, double x2) const override {
    const double rho = radius_ * r;
    return sign_ * std::sqrt(std::max(0.0, rho * rho - x1 * x1 - x2 * x2));
  }

  std::optional<std::pair<double, double>> range_on_cell(const Window2& base, double r, long i1,
                                                         long i2) const override {
    (void)base;  // the base of a ball is the disc of the same radius
    const double rho = radius_ * r;
    const double nx = std::clamp(0.0, static_cast<double>(i1), static_cast<double>(i1 + 1));
    const double ny = std::clamp(0.0, static_cast<double>(i2), static_cast<double>(i2 + 1));
    const double rho_min = std::hypot(nx, ny);
    if (rho_min > rho * (1.0 + kSnapTolerance)) return std::nullopt;
    double rho_max = 0.0;
    for (double cx : {static_cast<double>(i1), static_cast<double>(i1 + 1)})
      for (double cy : {static_cast<double>(i2), static_cast<double>(i2 + 1)})
        rho_max = std::max(rho_max, std::hypot(cx, cy));
    rho_max = std::min(rho_max, rho);
    const double big = std::sqrt(std::max(0.0, rho * rho - rho_min * rho_min));
    const double small = std::sqrt(std::max(0.0, rho * rho - rho_max * rho_max));
    if (sign_ > 0) return std::make_pair(small, big);
    return std::make_pair(-big, -small);
  }

 private:
  double radius_;
  int sign_;
};

class CustomSheet final : public Sheet {
 public:
  CustomSheet(std::function<double(double, double)> f, std::vector<double> jump_x1,
              std::vector<double> jump_x2)
      : f_(std::move(f)), jump_x1_(std::move(jump_x1)), jump_x2_(std::move(jump_x2)) {}

  double eval(double x1, double x2) const override { return f_(x1, x2); }

  std::optional<std::pair<double, double>> range_on_cell(const Window2& base, double r, long i1,
                                                         long i2) const override {
    const double eps = 1e-9 * std::max(1.0, r);
    const double cell_lo = std::max(static_cast<double>(i1), base.a() * r);
    const double cell_hi = std::min(static_cast<double>(i1 + 1), base.b() * r);
    if (cell_lo > cell_hi) return std::nullopt;
    bool found = false;
    double mn = 0.0, mx = 0.0;
    std::vector<double> xs = cell_x_samples(base, r, i1, 24);
    for (double j : jump_x1_) {
      const double xj = j * r;
      const double d = 1e-9 * std::max(1.0, std::abs(xj));
      if (xj - d > cell_lo && xj - d < cell_hi) xs.push_back(xj - d);
      if (xj + d > cell_lo && xj + d < cell_hi) xs.push_back(xj + d);
    }
    for (double x : xs) {
      const double y_lo = std::max(base.lower_r(r, x), static_cast<double>(i2)) ;
      const double y_hi = std::min(base.upper_r(r, x), static_cast<double>(i2 + 1));
      if (y_lo > y_hi + eps) continue;
      std::vector<double> ys;
      for (int k = 0; k <= 24; ++k)
        ys.push_back(y_lo + (y_hi - y_lo) * static_cast<double>(k) / 24.0);
      for (double j : jump_x2_) {
        const double yj = j * r;
        if (yj <= y_lo || yj >= y_hi) continue;
        const double d = 1e-9 * std::max(1.0, std::abs(yj));
        ys.push_back(yj - d);
        ys.push_back(yj + d);
      }
      for (double y : ys) {
        const double v = eval_scaled(r, x, y);
        if (!found) mn = mx = v, found = true;
        mn = std::min(mn, v);
        mx = std::max(mx, v);
      }
    }
    if (!found) return std::nullopt;
    return std::make_pair(mn, mx);
  }

 private:
  std::function<double(double, double)> f_;
  std::vector<double> jump_x1_, jump_x2_;
};

}  // namespace

std::shared_ptr<const Sheet> make_constant_sheet(double z) {
  return std::make_shared<ConstantSheet>(z);
}
std::shared_ptr<const Sheet> make_ball_sheet(double radius, int sign) {
  return std::make_shared<BallSheet>(radius, sign);
}
std::shared_ptr<const Sheet> make_custom_sheet(std::function<double(double, double)> f,
                                               std::vector<double> jump_x1,
                                               std::vector<double> jump_x2) {
  return std::make_shared<CustomSheet>(std::move(f), std::move(jump_x1), std::move(jump_x2));
}

Window3::Window3(Window2 base, std::shared_ptr<const Sheet> lower,
                 std::shared_ptr<const Sheet> upper, std::string shape_tag)
    : base_(std::move(base)), lower_(std::move(lower)), upper_(std::move(upper)),
      shape_(std::move(shape_tag)) {
  if (!(lower_->eval(0.0, 0.0) < 0.0 && upper_->eval(0.0, 0.0) > 0.0))
    throw parameter_error("window must contain the origin in its interior");
}

Window3 Window3::box() {
  return Window3(Window2::square(), make_constant_sheet(-1.0), make_constant_sheet(1.0), "box");
}

Window3 Window3::ball(double radius) {
  return Window3(Window2::disc(radius), make_ball_sheet(radius, -1), make_ball_sheet(radius, +1),
                 "ball");
}

Window3 Window3::prism(Window2 base, double z_lo, double z_hi) {
  if (!(z_lo < 0.0 && 0.0 < z_hi)) throw parameter_error("prism requires z_lo < 0 < z_hi");
  return Window3(std::move(base), make_constant_sheet(z_lo), make_constant_sheet(z_hi), "prism");
}

bool Window3::contains(double x1, double x2, double x3, double r) const {
  if (!base_.contains(x1, x2, r)) return false;
  const double eps = 1e-9 * std::max(1.0, r);
  return x3 >= lower_->eval_scaled(r, x1, x2) - eps && x3 <= upper_->eval_scaled(r, x1, x2) + eps;
}

double Window3::area(double tol) const {
  (void)tol;
  // Midpoint rule over the base bounding box; accuracy is set by the grid.
  const int n = 512;
  const double ax = base_.a(), bx = base_.b();
  double y_lo = 0.0, y_hi = 0.0;
  for (int k = 0; k <= 64; ++k) {
    const double x = ax + (bx - ax) * static_cast<double>(k) / 64.0;
    y_lo = std::min(y_lo, base_.lower_r(1.0, x));
    y_hi = std::max(y_hi, base_.upper_r(1.0, x));
  }
  const double hx = (bx - ax) / n, hy = (y_hi - y_lo) / n;
  double volume = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = ax + hx * (static_cast<double>(i) + 0.5);
    for (int j = 0; j < n; ++j) {
      const double y = y_lo + hy * (static_cast<double>(j) + 0.5);
      if (!base_.contains(x, y)) continue;
      volume += (upper_->eval(x, y) - lower_->eval(x, y)) * hx * hy;
    }
  }
  return volume;
}

std::size_t LatticeSet3::size() const {
  std::size_t n = 0;
  for (const auto& c : columns) n += static_cast<std::size_t>(c.k_hi - c.k_lo + 1);
  return n;
}

LatticeSet3 lattice(const Window3& window, double r) {
  if (!(r > 0.0)) throw parameter_error("lattice requires r > 0");
  LatticeSet3 set;
  set.r = r;
  const LatticeSet base = lattice(window.base(), r);
  for (const auto& col : base.columns) {
    for (long i2 = col.j_lo; i2 <= col.j_hi; ++i2) {
      const auto lo_range = window.lower().range_on_cell(window.base(), r, col.i, i2);
      if (!lo_range) continue;
      const auto hi_range = window.upper().range_on_cell(window.base(), r, col.i, i2);
      if (!hi_range) continue;
      // floor of the lower sheet's infimum, ceil of the upper sheet's
      // supremum (ceil used in every dimension).
      const long k_lo = snapped_floor(lo_range->first);
      const long k_hi = snapped_ceil(hi_range->second);
      if (k_lo > k_hi) continue;
      set.columns.push_back({col.i, i2, k_lo, k_hi});
    }
  }
  return set;
}

}  // namespace lrfield
