#include "hsmosaic/io/cube_file.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hsmosaic/error.hpp"

namespace hsmosaic::io {

namespace {

constexpr char kMagic[] = "HSC1";

std::uint32_t to_le(std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    return ((v & 0xff000000u) >> 24) | ((v & 0x00ff0000u) >> 8) |
           ((v & 0x0000ff00u) << 8) | ((v & 0x000000ffu) << 24);
  }
  return v;
}

std::string format_double(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

}  // namespace

void save_cube(const core::Hypercube& cube, const std::filesystem::path& path) {
  if (cube.width < 1 || cube.height < 1 || cube.bands < 1 ||
      cube.data.size() != static_cast<std::size_t>(cube.width) * cube.height * cube.bands) {
    throw ValidationError("cannot save an inconsistent hypercube");
  }
  std::vector<std::uint32_t> payload(cube.size());
  for (std::size_t i = 0; i < cube.size(); ++i) {
    const float f = static_cast<float>(cube.data[i]);
    if (!std::isfinite(f)) {
      throw FormatError("voxel " + std::to_string(i) + " value " +
                        format_double(cube.data[i]) + " does not fit a 32-bit float");
    }
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    payload[i] = to_le(bits);
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  out << kMagic << '\n'
      << cube.width << ' ' << cube.height << ' ' << cube.bands << ' '
      << format_double(cube.value_lo) << ' ' << format_double(cube.value_hi) << '\n';
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size() * 4));
  if (!out) throw FormatError("write failed for " + path.string());
}

core::Hypercube load_cube(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());

  std::string magic;
  if (!std::getline(in, magic) || magic != kMagic) {
    throw FormatError(path.string() + ": bad magic (expected \"" + kMagic + "\", got \"" +
                      magic + "\") at byte offset 0");
  }
  std::string header;
  if (!std::getline(in, header)) {
    throw FormatError(path.string() + ": missing header line at byte offset 5");
  }
  std::istringstream hs(header);
  int width = 0, height = 0, bands = 0;
  double lo = 0.0, hi = 0.0;
  if (!(hs >> width >> height >> bands >> lo >> hi)) {
    throw FormatError(path.string() + ": header \"" + header +
                      "\" does not parse as \"X Y C lo hi\"");
  }
  std::string trailing;
  if (hs >> trailing) {
    throw FormatError(path.string() + ": trailing header tokens: \"" + trailing + "\"");
  }
  if (width < 1 || height < 1 || bands < 1) {
    throw FormatError(path.string() + ": non-positive dimensions in header");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw FormatError(path.string() + ": non-finite value range in header");
  }

  const std::size_t count = static_cast<std::size_t>(width) * height * bands;
  const std::size_t expected_bytes = count * 4;
  const std::streamoff payload_offset = in.tellg();
  std::vector<std::uint32_t> payload(count);
  in.read(reinterpret_cast<char*>(payload.data()),
          static_cast<std::streamsize>(expected_bytes));
  const std::size_t got_bytes = static_cast<std::size_t>(in.gcount());
  if (got_bytes != expected_bytes) {
    throw FormatError(path.string() + ": truncated payload: expected " +
                      std::to_string(expected_bytes) + " bytes, got " +
                      std::to_string(got_bytes) + " (payload starts at byte offset " +
                      std::to_string(payload_offset) + ")");
  }
  char extra;
  if (in.read(&extra, 1)) {
    throw FormatError(path.string() + ": payload longer than header promises (" +
                      std::to_string(expected_bytes) + " bytes expected)");
  }

  core::Hypercube cube(width, height, bands);
  cube.value_lo = lo;
  cube.value_hi = hi;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t bits = to_le(payload[i]);
    float f;
    std::memcpy(&f, &bits, 4);
    if (!std::isfinite(f)) {
      throw FormatError(path.string() + ": non-finite value at voxel " + std::to_string(i) +
                        " (byte offset " +
                        std::to_string(static_cast<std::size_t>(payload_offset) + i * 4) + ")");
    }
    cube.data[i] = static_cast<double>(f);
  }
  return cube;
}

void save_mosaic(const core::SnapshotMosaic& mosaic, const std::filesystem::path& path) {
  core::Hypercube cube(mosaic.width, mosaic.height, 1);
  std::copy(mosaic.data.begin(), mosaic.data.end(), cube.data.begin());
  save_cube(cube, path);
}

core::SnapshotMosaic load_mosaic(const std::filesystem::path& path) {
  const core::Hypercube cube = load_cube(path);
  if (cube.bands != 1) {
    throw FormatError(path.string() + ": expected a single-band mosaic, got " +
                      std::to_string(cube.bands) + " bands");
  }
  core::SnapshotMosaic mosaic(cube.width, cube.height);
  std::copy(cube.data.begin(), cube.data.end(), mosaic.data.begin());
  return mosaic;
}

}  // namespace hsmosaic::io
