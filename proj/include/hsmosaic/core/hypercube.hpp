#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hsmosaic::core {

/// Single-channel 2-D raster of doubles, row-major.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  Image() = default;
  Image(int width, int height, double fill = 0.0);

  double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

  std::size_t size() const { return data.size(); }
  bool all_finite() const;
};

/// A snapshot mosaic measurement: one scalar per pixel, the band selected by
/// the MSFA pattern at that position.
using SnapshotMosaic = Image;

/// X x Y x C reflectance cube. Planes are stored band-major, row-major within
/// a plane: index = (c * height + y) * width + x. value_lo/value_hi are
/// nominal-range metadata carried through file I/O, not a clamp.
struct Hypercube {
  int width = 0;
  int height = 0;
  int bands = 0;
  double value_lo = 0.0;
  double value_hi = 1.0;
  std::vector<double> data;

  Hypercube() = default;
  Hypercube(int width, int height, int bands, double fill = 0.0);

  double& at(int x, int y, int c) {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  double at(int x, int y, int c) const {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }

  std::span<double> band(int c) {
    return {data.data() + static_cast<std::size_t>(c) * width * height,
            static_cast<std::size_t>(width) * height};
  }
  std::span<const double> band(int c) const {
    return {data.data() + static_cast<std::size_t>(c) * width * height,
            static_cast<std::size_t>(width) * height};
  }

  Image band_image(int c) const;
  void set_band(int c, const Image& plane);

  std::size_t size() const { return data.size(); }
  bool all_finite() const;
};

/// Repeating n x n multispectral filter array. band_of is row-major:
/// band_of[j * period + i] is the band measured at cell column i, row j,
/// so the band at pixel (x, y) is band_of[(y % n) * n + (x % n)].
struct MsfaPattern {
  int period = 0;
  int bands = 0;
  std::vector<int> band_of;

  int band_at(int x, int y) const {
    return band_of[static_cast<std::size_t>(y % period) * period + (x % period)];
  }

  /// Throws ValidationError unless period >= 1, band_of has period^2 entries,
  /// and every index lies in [0, bands).
  void validate() const;

  /// Row-major 4x4 layout over 16 bands: band_of[j][i] = 4j + i. The physical
  /// sensor layout is vendor-specific; this is the documented default.
  static MsfaPattern default_4x4();
};

}  // namespace hsmosaic::core
