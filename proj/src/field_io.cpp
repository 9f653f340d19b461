#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "lrfield/errors.hpp"
#include "lrfield/fieldsim.hpp"

namespace lrfield {

// Byte layout (little endian), documented in the README:
//   "LRFD" | u32 version | u32 dimension | u32 method | u32 reserved |
//   u64 seed | u64 stream | f64 step |
//   per axis: u64 extent, f64 origin |
//   f64 values, row major (last axis fastest)
// A text sidecar <path>.meta carries the model description and warnings.

namespace {

template <class T>
void put(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
void get(std::ifstream& is, T& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
}

}  // namespace

void dump_field(const FieldRealization& field, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open " + path + " for writing");
  os.write("LRFD", 4);
  put<std::uint32_t>(os, 1u);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(field.grid.dimension));
  put<std::uint32_t>(os, field.method == SimMethod::random_wave ? 1u : 0u);
  put<std::uint32_t>(os, 0u);
  put<std::uint64_t>(os, field.seed);
  put<std::uint64_t>(os, field.stream);
  put<double>(os, field.grid.step);
  for (int d = 0; d < field.grid.dimension; ++d) {
    put<std::uint64_t>(os, static_cast<std::uint64_t>(field.grid.extent[d]));
    put<double>(os, field.grid.origin[d]);
  }
  os.write(reinterpret_cast<const char*>(field.values.data()),
           static_cast<std::streamsize>(field.values.size() * sizeof(double)));
  if (!os) throw io_error("failed writing " + path);

  std::ofstream meta(path + ".meta");
  meta << "model=" << field.model.describe() << "\n";
  meta << "method=" << (field.method == SimMethod::random_wave ? "random_wave" : "circulant_embedding")
       << "\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", field.clipped_mass);
  meta << "clipped_mass=" << buf << "\n";
  for (const auto& w : field.warnings) meta << "warning=" << w << "\n";
}

FieldRealization load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "LRFD", 4) != 0) throw io_error("not a field dump: " + path);
  std::uint32_t version = 0, dimension = 0, method = 0, reserved = 0;
  get(is, version);
  get(is, dimension);
  get(is, method);
  get(is, reserved);
  if (version != 1) throw io_error("unsupported field dump version");
  if (dimension < 1 || dimension > 3) throw io_error("corrupt field dump: bad dimension");

  FieldRealization field;
  field.grid.dimension = static_cast<int>(dimension);
  get(is, field.seed);
  get(is, field.stream);
  get(is, field.grid.step);
  for (std::uint32_t d = 0; d < dimension; ++d) {
    std::uint64_t extent = 0;
    get(is, extent);
    get(is, field.grid.origin[d]);
    field.grid.extent[d] = static_cast<long>(extent);
  }
  field.method = method == 1 ? SimMethod::random_wave : SimMethod::circulant_embedding;
  field.grid.validate();
  field.values.resize(field.grid.total());
  is.read(reinterpret_cast<char*>(field.values.data()),
          static_cast<std::streamsize>(field.values.size() * sizeof(double)));
  if (!is) throw io_error("truncated field dump: " + path);
  return field;
}

}  // namespace lrfield
