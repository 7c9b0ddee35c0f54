#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "hsmosaic/core/hypercube.hpp"

namespace hsmosaic::io {

/// Linear spectra -> RGB map plus the display gamma used on export. This is a
/// qualitative preview projection, not a colorimetric pipeline.
struct RgbProjection {
  int bands = 0;
  std::array<std::vector<double>, 3> rows;  // R, G, B; each length == bands
  double gamma = 2.2;

  /// Throws ValidationError on row-length mismatch, negative entries, or
  /// gamma <= 0.
  void validate() const;

  /// Gaussian weighting rows centered at 610/540/470 nm sampled at the given
  /// band centers, each row normalized to unit sum (so a constant cube maps
  /// to a neutral gray).
  static RgbProjection gaussian_default(const std::vector<double>& band_centers_nm,
                                        double sigma_nm = 35.0);
  /// Same, with evenly spaced default band centers for `bands` bands.
  static RgbProjection gaussian_default(int bands);
};

/// Projects every pixel spectrum through proj, clamps to [0, 1], gamma
/// encodes, and quantizes to 8 bits. Layout: y-major, RGB interleaved.
std::vector<std::uint8_t> project_rgb(const core::Hypercube& cube, const RgbProjection& proj);

/// Binary PPM (P6), 8 bits per sample.
void write_ppm(const std::filesystem::path& path, int width, int height,
               const std::vector<std::uint8_t>& rgb);

/// project_rgb + write_ppm.
void to_rgb(const core::Hypercube& cube, const RgbProjection& proj,
            const std::filesystem::path& path);

}  // namespace hsmosaic::io
