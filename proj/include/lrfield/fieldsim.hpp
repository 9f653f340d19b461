#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrfield/covariance.hpp"

namespace lrfield {

// Regular grid: node k of axis d sits at origin[d] + step * k.  A 2-d grid
// with extent 1 along one axis doubles as a line grid for margin tests.
struct GridSpec {
  int dimension = 2;
  std::array<double, 3> origin{0.0, 0.0, 0.0};
  double step = 1.0;
  std::array<long, 3> extent{1, 1, 1};

  void validate() const;
  std::size_t total() const;
  double coord(int axis, long index) const { return origin[axis] + step * index; }
  std::size_t flat_index(long i, long j, long k = 0) const;
};

enum class SimMethod { circulant_embedding, random_wave };

struct SimOptions {
  std::optional<SimMethod> method;  // default: random_wave for bessel, else circulant
  int waves = 2000;                 // K, random-wave backend
  std::uint64_t stream = 0;         // RNG substream (see make_stream_id)
};

struct FieldRealization {
  GridSpec grid;
  std::vector<double> values;  // row major, last axis fastest
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  SimMethod method = SimMethod::circulant_embedding;
  CovarianceModel model;
  double clipped_mass = 0.0;  // relative spectral mass clipped by the embedding
  std::vector<std::string> warnings;

  double at(long i, long j = 0, long k = 0) const { return values[grid.flat_index(i, j, k)]; }
  // Value at an exact grid node with the given coordinates; the node must
  // exist (integer lattice points must sit on the grid, i.e. h = 1/m).
  double at_point(const double* point) const;
  bool covers_point(const double* point) const;
};

// Exact-in-distribution stationary simulation by circulant embedding: the
// covariance is wrapped onto an enlarged torus, the spectrum is the FFT of
// the wrapped covariance, and negative eigenvalues (the embedding error) are
// clipped after up to two enlargements; the remaining spectrum is rescaled
// so the field keeps variance B(0).  Clipped relative mass above 1e-3 is
// surfaced as a warning in the realization.
FieldRealization simulate_circulant(const CovarianceModel& model, const GridSpec& grid,
                                    std::uint64_t seed, std::uint64_t stream = 0);

// Superposition of K random plane waves with frequencies on the unit circle
// (radius mixed by the Bessel order for v > 0):
//   xi(x) = K^{-1/2} sum_k [A_k cos<l_k, x> + B_k sin<l_k, x>].
// The covariance equals the Bessel model exactly for every K; the marginal
// law is Gaussian for every K and joint laws are Gaussian in the K limit.
FieldRealization simulate_random_wave(const CovarianceModel& model, const GridSpec& grid,
                                      std::uint64_t seed, int waves, std::uint64_t stream = 0);

FieldRealization simulate(const CovarianceModel& model, const GridSpec& grid, std::uint64_t seed,
                          const SimOptions& options = {});

// Flat binary dump plus a text sidecar (<path>.meta); see README for the
// byte layout.
void dump_field(const FieldRealization& field, const std::string& path);
FieldRealization load_field(const std::string& path);

}  // namespace lrfield
