#include "hsmosaic/io/rgb.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "hsmosaic/error.hpp"
#include "hsmosaic/spectral/weights.hpp"

namespace hsmosaic::io {

void RgbProjection::validate() const {
  if (bands < 1) throw ValidationError("rgb projection needs at least one band");
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != bands) {
      throw ValidationError("rgb projection row length does not match band count");
    }
    for (double v : row) {
      if (!(v >= 0.0)) throw ValidationError("rgb projection entries must be non-negative");
    }
  }
  if (!(gamma > 0.0)) throw ValidationError("gamma must be positive");
}

RgbProjection RgbProjection::gaussian_default(const std::vector<double>& band_centers_nm,
                                              double sigma_nm) {
  static constexpr double kChannelCenters[3] = {610.0, 540.0, 470.0};
  RgbProjection proj;
  proj.bands = static_cast<int>(band_centers_nm.size());
  for (int ch = 0; ch < 3; ++ch) {
    auto& row = proj.rows[ch];
    row.resize(band_centers_nm.size());
    for (std::size_t c = 0; c < band_centers_nm.size(); ++c) {
      const double d = (band_centers_nm[c] - kChannelCenters[ch]) / sigma_nm;
      row[c] = std::exp(-0.5 * d * d);
    }
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    if (sum > 0.0) {
      for (double& v : row) v /= sum;
    }
  }
  proj.validate();
  return proj;
}

RgbProjection RgbProjection::gaussian_default(int bands) {
  return gaussian_default(spectral::SpectralResponseSet::default_centers(bands));
}

std::vector<std::uint8_t> project_rgb(const core::Hypercube& cube, const RgbProjection& proj) {
  proj.validate();
  if (proj.bands != cube.bands) {
    throw ValidationError("rgb projection expects " + std::to_string(proj.bands) +
                          " bands, cube has " + std::to_string(cube.bands));
  }
  std::vector<std::uint8_t> out(static_cast<std::size_t>(cube.width) * cube.height * 3);
  const double inv_gamma = 1.0 / proj.gamma;
  std::size_t k = 0;
  for (int y = 0; y < cube.height; ++y) {
    for (int x = 0; x < cube.width; ++x) {
      for (int ch = 0; ch < 3; ++ch) {
        double lin = 0.0;
        for (int c = 0; c < cube.bands; ++c) lin += proj.rows[ch][c] * cube.at(x, y, c);
        lin = std::clamp(lin, 0.0, 1.0);
        const double encoded = std::pow(lin, inv_gamma);
        out[k++] = static_cast<std::uint8_t>(std::lround(encoded * 255.0));
      }
    }
  }
  return out;
}

void write_ppm(const std::filesystem::path& path, int width, int height,
               const std::vector<std::uint8_t>& rgb) {
  if (rgb.size() != static_cast<std::size_t>(width) * height * 3) {
    throw ValidationError("rgb buffer size does not match image dimensions");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
  out << "P6\n" << width << " " << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
  if (!out) throw FormatError("write failed for '" + path.string() + "'");
}

void to_rgb(const core::Hypercube& cube, const RgbProjection& proj,
            const std::filesystem::path& path) {
  write_ppm(path, cube.width, cube.height, project_rgb(cube, proj));
}

}  // namespace hsmosaic::io
