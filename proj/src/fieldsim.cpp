#include "lrfield/fieldsim.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>

#include "lrfield/errors.hpp"
#include "lrfield/rng.hpp"

namespace lrfield {

void GridSpec::validate() const {
  if (dimension < 1 || dimension > 3) throw parameter_error("grid dimension must be 1..3");
  if (!(step > 0.0)) throw parameter_error("grid step must be positive");
  for (int d = 0; d < dimension; ++d)
    if (extent[d] < 1) throw parameter_error("grid extents must be >= 1");
}

std::size_t GridSpec::total() const {
  std::size_t n = 1;
  for (int d = 0; d < dimension; ++d) n *= static_cast<std::size_t>(extent[d]);
  return n;
}

std::size_t GridSpec::flat_index(long i, long j, long k) const {
  if (dimension == 1) return static_cast<std::size_t>(i);
  if (dimension == 2)
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(extent[1]) +
           static_cast<std::size_t>(j);
  return (static_cast<std::size_t>(i) * static_cast<std::size_t>(extent[1]) +
          static_cast<std::size_t>(j)) *
             static_cast<std::size_t>(extent[2]) +
         static_cast<std::size_t>(k);
}

bool FieldRealization::covers_point(const double* point) const {
  for (int d = 0; d < grid.dimension; ++d) {
    const double pos = (point[d] - grid.origin[d]) / grid.step;
    const long idx = static_cast<long>(std::llround(pos));
    if (idx < 0 || idx >= grid.extent[d]) return false;
    if (std::abs(grid.coord(d, idx) - point[d]) > 1e-9 * std::max(1.0, std::abs(point[d])))
      return false;
  }
  return true;
}

double FieldRealization::at_point(const double* point) const {
  long idx[3] = {0, 0, 0};
  for (int d = 0; d < grid.dimension; ++d) {
    const double pos = (point[d] - grid.origin[d]) / grid.step;
    idx[d] = static_cast<long>(std::llround(pos));
    if (idx[d] < 0 || idx[d] >= grid.extent[d] ||
        std::abs(grid.coord(d, idx[d]) - point[d]) > 1e-9 * std::max(1.0, std::abs(point[d])))
      throw coverage_error("requested point is not a grid node of the realization");
  }
  return values[grid.flat_index(idx[0], idx[1], idx[2])];
}

namespace {

// FFTW plan creation is not thread safe; execution on distinct data is.
std::mutex fftw_plan_mutex;

long next_pow2(long n) {
  long p = 1;
  while (p < n) p *= 2;
  return p;
}

struct Embedding {
  std::array<long, 3> m{1, 1, 1};
  std::vector<double> eigenvalues;
  double clipped_mass = 0.0;
  bool acceptable = false;
};

Embedding build_embedding(const CovarianceModel& model, const GridSpec& grid, int enlarge) {
  Embedding emb;
  std::size_t mtot = 1;
  for (int d = 0; d < grid.dimension; ++d) {
    const long n = grid.extent[d];
    emb.m[d] = n == 1 ? 1 : enlarge * next_pow2(2 * (n - 1));
    mtot *= static_cast<std::size_t>(emb.m[d]);
  }

  std::vector<std::complex<double>> buf(mtot);
  const long m0 = emb.m[0], m1 = emb.m[1], m2 = emb.m[2];
  for (long i = 0; i < m0; ++i) {
    const double di = static_cast<double>(std::min(i, m0 - i)) * grid.step;
    for (long j = 0; j < m1; ++j) {
      const double dj = static_cast<double>(std::min(j, m1 - j)) * grid.step;
      for (long k = 0; k < m2; ++k) {
        const double dk = static_cast<double>(std::min(k, m2 - k)) * grid.step;
        const double dist = std::sqrt(di * di + dj * dj + dk * dk);
        buf[(static_cast<std::size_t>(i) * m1 + j) * m2 + k] = cov_eval(model, dist);
      }
    }
  }

  {
    std::unique_lock lock(fftw_plan_mutex);
    fftw_plan plan = fftw_plan_dft_3d(static_cast<int>(m0), static_cast<int>(m1),
                                      static_cast<int>(m2),
                                      reinterpret_cast<fftw_complex*>(buf.data()),
                                      reinterpret_cast<fftw_complex*>(buf.data()), FFTW_FORWARD,
                                      FFTW_ESTIMATE);
    lock.unlock();
    fftw_execute(plan);
    lock.lock();
    fftw_destroy_plan(plan);
  }

  emb.eigenvalues.resize(mtot);
  double max_ev = 0.0, neg_mass = 0.0, abs_mass = 0.0;
  for (std::size_t idx = 0; idx < mtot; ++idx) {
    const double ev = buf[idx].real();
    emb.eigenvalues[idx] = ev;
    max_ev = std::max(max_ev, ev);
    abs_mass += std::abs(ev);
    if (ev < 0.0) neg_mass += -ev;
  }
  emb.clipped_mass = abs_mass > 0.0 ? neg_mass / abs_mass : 0.0;
  double min_ev = 0.0;
  for (double ev : emb.eigenvalues) min_ev = std::min(min_ev, ev);
  emb.acceptable = min_ev >= -1e-8 * max_ev;
  return emb;
}

}  // namespace

FieldRealization simulate_circulant(const CovarianceModel& model, const GridSpec& grid,
                                    std::uint64_t seed, std::uint64_t stream) {
  grid.validate();
  model.validate();

  Embedding emb = build_embedding(model, grid, 1);
  for (int enlarge : {2, 4}) {
    if (emb.acceptable) break;
    emb = build_embedding(model, grid, enlarge);
  }

  const long m0 = emb.m[0], m1 = emb.m[1], m2 = emb.m[2];
  const std::size_t mtot = emb.eigenvalues.size();
  // Clip the embedding error and rescale the remaining spectrum so the
  // realized variance stays B(0) = 1 (clipping alone inflates it by the
  // clipped mass).
  double positive_mass = 0.0;
  for (double ev : emb.eigenvalues) positive_mass += std::max(0.0, ev);
  const double rescale =
      positive_mass > 0.0 ? static_cast<double>(mtot) * cov_eval(model, 0.0) / positive_mass : 1.0;
  std::vector<std::complex<double>> buf(mtot);
  RngStream rng(seed, stream);
  for (std::size_t idx = 0; idx < mtot; ++idx) {
    const double ev = std::max(0.0, emb.eigenvalues[idx]) * rescale;
    const double s = std::sqrt(ev);
    const double a = rng.normal();
    const double b = rng.normal();
    buf[idx] = std::complex<double>(s * a, s * b);
  }

  {
    std::unique_lock lock(fftw_plan_mutex);
    fftw_plan plan = fftw_plan_dft_3d(static_cast<int>(m0), static_cast<int>(m1),
                                      static_cast<int>(m2),
                                      reinterpret_cast<fftw_complex*>(buf.data()),
                                      reinterpret_cast<fftw_complex*>(buf.data()), FFTW_BACKWARD,
                                      FFTW_ESTIMATE);
    lock.unlock();
    fftw_execute(plan);
    lock.lock();
    fftw_destroy_plan(plan);
  }

  FieldRealization out;
  out.grid = grid;
  out.seed = seed;
  out.stream = stream;
  out.method = SimMethod::circulant_embedding;
  out.model = model;
  out.clipped_mass = emb.clipped_mass;
  if (emb.clipped_mass > 1e-3) {
    out.warnings.push_back("circulant embedding clipped relative spectral mass " +
                           std::to_string(emb.clipped_mass));
  }
  out.values.resize(grid.total());
  const double scale = 1.0 / std::sqrt(static_cast<double>(mtot));
  const long n0 = grid.extent[0];
  const long n1 = grid.dimension >= 2 ? grid.extent[1] : 1;
  const long n2 = grid.dimension >= 3 ? grid.extent[2] : 1;
  for (long i = 0; i < n0; ++i)
    for (long j = 0; j < n1; ++j)
      for (long k = 0; k < n2; ++k)
        out.values[grid.flat_index(i, j, k)] =
            scale * buf[(static_cast<std::size_t>(i) * m1 + j) * m2 + k].real();
  return out;
}

FieldRealization simulate_random_wave(const CovarianceModel& model, const GridSpec& grid,
                                      std::uint64_t seed, int waves, std::uint64_t stream) {
  grid.validate();
  model.validate();
  if (model.family != CovFamily::bessel)
    throw unsupported_model_error("random_wave backend supports the bessel family only");
  if (grid.dimension == 3)
    throw unsupported_model_error(
        "random_wave is planar: the bessel family with v < 1/2 is a covariance on R^2");
  if (waves < 1) throw parameter_error("random_wave requires K >= 1");

  const long nx = grid.extent[0];
  const long ny = grid.dimension >= 2 ? grid.extent[1] : 1;
  const int k2 = 2 * waves;
  Eigen::MatrixXd p(nx, k2), q(ny, k2);
  RngStream rng(seed, stream);
  const double amp = 1.0 / std::sqrt(static_cast<double>(waves));
  for (int k = 0; k < waves; ++k) {
    const double angle = 2.0 * std::numbers::pi * rng.uniform01();
    double radius = 1.0;
    if (model.v > 0.0) {
      // Radial mixing with density 2v t (1-t^2)^(v-1) on (0,1) reproduces
      // J_v(r)/r^v from J_0 (Sonine's first integral).
      radius = std::sqrt(1.0 - std::pow(rng.uniform01(), 1.0 / model.v));
    }
    const double lx = radius * std::cos(angle);
    const double ly = radius * std::sin(angle);
    const double a = rng.normal();
    const double b = rng.normal();
    // cos(u+v), sin(u+v) split so the field is a rank-2K product:
    //   field = P Q^T with
    //   P[i,2k] = (A cos a_i + B sin a_i),  P[i,2k+1] = (B cos a_i - A sin a_i)
    //   Q[j,2k] = cos b_j,                  Q[j,2k+1] = sin b_j.
    for (long i = 0; i < nx; ++i) {
      const double ai = lx * grid.coord(0, i);
      const double ca = std::cos(ai), sa = std::sin(ai);
      p(i, 2 * k) = amp * (a * ca + b * sa);
      p(i, 2 * k + 1) = amp * (b * ca - a * sa);
    }
    for (long j = 0; j < ny; ++j) {
      const double bj = grid.dimension >= 2 ? ly * grid.coord(1, j) : 0.0;
      q(j, 2 * k) = std::cos(bj);
      q(j, 2 * k + 1) = std::sin(bj);
    }
  }

  FieldRealization out;
  out.grid = grid;
  out.seed = seed;
  out.stream = stream;
  out.method = SimMethod::random_wave;
  out.model = model;
  out.values.resize(grid.total());
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> field(
      out.values.data(), nx, ny);
  field.noalias() = p * q.transpose();
  return out;
}

FieldRealization simulate(const CovarianceModel& model, const GridSpec& grid, std::uint64_t seed,
                          const SimOptions& options) {
  SimMethod method = options.method.value_or(model.family == CovFamily::bessel
                                                 ? SimMethod::random_wave
                                                 : SimMethod::circulant_embedding);
  if (method == SimMethod::random_wave)
    return simulate_random_wave(model, grid, seed, options.waves, options.stream);
  return simulate_circulant(model, grid, seed, options.stream);
}

}  // namespace lrfield
