#include "hsmosaic/core/hypercube.hpp"

#include <cmath>
#include <string>

#include "hsmosaic/error.hpp"

namespace hsmosaic::core {

namespace {

void check_dims(int width, int height, int bands) {
  if (width < 1 || height < 1 || bands < 1) {
    throw ValidationError("hypercube dimensions must be positive, got " +
                          std::to_string(width) + "x" + std::to_string(height) + "x" +
                          std::to_string(bands));
  }
}

bool finite_range(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

Image::Image(int width_, int height_, double fill)
    : width(width_), height(height_) {
  check_dims(width_, height_, 1);
  data.assign(static_cast<std::size_t>(width_) * height_, fill);
}

bool Image::all_finite() const { return finite_range(data); }

Hypercube::Hypercube(int width_, int height_, int bands_, double fill)
    : width(width_), height(height_), bands(bands_) {
  check_dims(width_, height_, bands_);
  data.assign(static_cast<std::size_t>(width_) * height_ * bands_, fill);
}

Image Hypercube::band_image(int c) const {
  if (c < 0 || c >= bands) {
    throw ValidationError("band index " + std::to_string(c) + " out of range [0, " +
                          std::to_string(bands) + ")");
  }
  Image plane(width, height);
  auto src = band(c);
  std::copy(src.begin(), src.end(), plane.data.begin());
  return plane;
}

void Hypercube::set_band(int c, const Image& plane) {
  if (c < 0 || c >= bands) {
    throw ValidationError("band index " + std::to_string(c) + " out of range [0, " +
                          std::to_string(bands) + ")");
  }
  if (plane.width != width || plane.height != height) {
    throw ValidationError("band plane size mismatch");
  }
  auto dst = band(c);
  std::copy(plane.data.begin(), plane.data.end(), dst.begin());
}

bool Hypercube::all_finite() const { return finite_range(data); }

void MsfaPattern::validate() const {
  if (period < 1) throw ValidationError("mosaic period must be >= 1");
  if (bands < 1) throw ValidationError("pattern band count must be >= 1");
  if (band_of.size() != static_cast<std::size_t>(period) * period) {
    throw ValidationError("pattern grid must have period^2 entries");
  }
  for (int b : band_of) {
    if (b < 0 || b >= bands) {
      throw ValidationError("pattern band index " + std::to_string(b) +
                            " out of range [0, " + std::to_string(bands) + ")");
    }
  }
}

MsfaPattern MsfaPattern::default_4x4() {
  MsfaPattern p;
  p.period = 4;
  p.bands = 16;
  p.band_of.resize(16);
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) p.band_of[j * 4 + i] = 4 * j + i;
  }
  return p;
}

}  // namespace hsmosaic::core
