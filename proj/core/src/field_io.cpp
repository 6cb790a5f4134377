#include "bqmaxwell/field_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>

#include "bqmaxwell/errors.hpp"

namespace bqmaxwell {
namespace {

constexpr std::uint32_t kVersion = 1;

template <typename U>
void put_le(std::ostream& out, U value) {
  std::array<char, sizeof(U)> bytes;
  for (std::size_t b = 0; b < sizeof(U); ++b) {
    bytes[b] = static_cast<char>((value >> (8 * b)) & 0xff);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename U>
U get_le(std::istream& in) {
  std::array<unsigned char, sizeof(U)> bytes;
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw std::runtime_error("BQMX: truncated stream");
  U value = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b) {
    value |= static_cast<U>(bytes[b]) << (8 * b);
  }
  return value;
}

void put_f64(std::ostream& out, double v) {
  put_le(out, std::bit_cast<std::uint64_t>(v));
}

double get_f64(std::istream& in) {
  return std::bit_cast<double>(get_le<std::uint64_t>(in));
}

}  // namespace

void write_bqmx(std::ostream& out, const SpaceTimeField& w) {
  const auto& grid = w.grid();
  out.write("BQMX", 4);
  put_le<std::uint32_t>(out, kVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(grid.n()));
  put_f64(out, grid.length());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(w.slice_count()));
  put_f64(out, w.dt());
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(w.domain()));
  for (const auto& slice : w.slices()) {
    for (const auto& b : slice.values()) {
      for (int c = 0; c < 4; ++c) {
        put_f64(out, b[c].real());
        put_f64(out, b[c].imag());
      }
    }
  }
  if (!out) throw std::runtime_error("BQMX: write failed");
}

SpaceTimeField read_bqmx(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "BQMX") {
    throw std::runtime_error("BQMX: bad magic");
  }
  if (const auto version = get_le<std::uint32_t>(in); version != kVersion) {
    throw std::runtime_error("BQMX: unsupported version " +
                             std::to_string(version));
  }
  const auto n = static_cast<int>(get_le<std::uint32_t>(in));
  const double L = get_f64(in);
  const auto slices = get_le<std::uint32_t>(in);
  const double dt = get_f64(in);
  const auto tag = get_le<std::uint8_t>(in);
  if (tag > 1) throw std::runtime_error("BQMX: bad domain tag");
  const SpatialGrid grid(n, L);
  const auto domain = static_cast<Domain>(tag);
  std::vector<BiquatField> fields;
  fields.reserve(slices);
  for (std::uint32_t j = 0; j < slices; ++j) {
    BiquatField f(grid, domain);
    for (auto& b : f.values()) {
      for (int c = 0; c < 4; ++c) {
        const double re = get_f64(in);
        const double im = get_f64(in);
        b[c] = Complex{re, im};
      }
    }
    fields.push_back(std::move(f));
  }
  return {std::move(fields), dt};
}

void write_bqmx_file(const std::string& path, const SpaceTimeField& w) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_bqmx(out, w);
}

SpaceTimeField read_bqmx_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_bqmx(in);
}

void write_csv_slice(std::ostream& out, const SpaceTimeField& w, int axis,
                     int index, const std::vector<int>& time_slices) {
  const auto& grid = w.grid();
  if (axis < 0 || axis > 2 || index < 0 || index >= grid.n()) {
    throw ConfigError("csv slice: axis must be 0..2 and index inside the grid");
  }
  out << "x1,x2,x3,t,c0re,c0im,c1re,c1im,c2re,c2im,c3re,c3im\n";
  out << std::setprecision(17);
  for (int j : time_slices) {
    if (j < 0 || j > w.steps()) {
      throw ConfigError("csv slice: time index out of range");
    }
    const auto& slice = w.slice(j);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      if (grid.multi_index(idx)[axis] != index) continue;
      const Vec3 x = grid.position(idx);
      out << x[0] << ',' << x[1] << ',' << x[2] << ',' << w.time(j);
      for (int c = 0; c < 4; ++c) {
        out << ',' << slice[idx][c].real() << ',' << slice[idx][c].imag();
      }
      out << '\n';
    }
  }
}

}  // namespace bqmaxwell
