#include "hsmosaic/core/mosaic.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hsmosaic/error.hpp"

namespace hsmosaic::core {

namespace {

void check_pattern_cube(const Hypercube& cube, const MsfaPattern& pattern) {
  pattern.validate();
  int max_band = *std::max_element(pattern.band_of.begin(), pattern.band_of.end());
  if (max_band >= cube.bands) {
    throw ValidationError("pattern selects band " + std::to_string(max_band) +
                          " but cube has only " + std::to_string(cube.bands) + " bands");
  }
}

void check_snapshot(const Hypercube& cube, const SnapshotMosaic& snapshot) {
  if (snapshot.width != cube.width || snapshot.height != cube.height) {
    throw ValidationError("snapshot " + std::to_string(snapshot.width) + "x" +
                          std::to_string(snapshot.height) + " does not match cube " +
                          std::to_string(cube.width) + "x" + std::to_string(cube.height));
  }
}

// Fills out[0..length) from samples at positions ks (sorted, non-empty):
// linear between neighbours, clamped to the nearest sample outside their
// span. Computed as v0*(1-t) + v1*t so sample positions reproduce exactly.
void lerp_fill_1d(const std::vector<int>& ks, const std::vector<double>& vals,
                  int length, double* out) {
  const int first = ks.front();
  const int last = ks.back();
  for (int x = 0; x <= first; ++x) out[x] = vals.front();
  for (int x = last; x < length; ++x) out[x] = vals.back();
  for (std::size_t s = 0; s + 1 < ks.size(); ++s) {
    const int x0 = ks[s], x1 = ks[s + 1];
    const double v0 = vals[s], v1 = vals[s + 1];
    const double span = x1 - x0;
    for (int x = x0; x <= x1; ++x) {
      const double t = (x - x0) / span;
      out[x] = v0 * (1.0 - t) + v1 * t;
    }
  }
}

}  // namespace

SnapshotMosaic mosaic_apply(const Hypercube& cube, const MsfaPattern& pattern) {
  check_pattern_cube(cube, pattern);
  SnapshotMosaic out(cube.width, cube.height);
  for (int y = 0; y < cube.height; ++y) {
    for (int x = 0; x < cube.width; ++x) {
      out.at(x, y) = cube.at(x, y, pattern.band_at(x, y));
    }
  }
  return out;
}

Hypercube override_apply(const Hypercube& cube, const SnapshotMosaic& snapshot,
                         const MsfaPattern& pattern) {
  Hypercube result = cube;
  override_apply_inplace(result, snapshot, pattern);
  return result;
}

void override_apply_inplace(Hypercube& cube, const SnapshotMosaic& snapshot,
                            const MsfaPattern& pattern) {
  check_pattern_cube(cube, pattern);
  check_snapshot(cube, snapshot);
  for (int y = 0; y < cube.height; ++y) {
    for (int x = 0; x < cube.width; ++x) {
      cube.at(x, y, pattern.band_at(x, y)) = snapshot.at(x, y);
    }
  }
}

Hypercube bilinear_demosaic(const SnapshotMosaic& snapshot, const MsfaPattern& pattern) {
  pattern.validate();
  const int width = snapshot.width, height = snapshot.height;
  const int n = pattern.period;
  if (width < n || height < n) {
    throw ValidationError("image " + std::to_string(width) + "x" + std::to_string(height) +
                          " smaller than one mosaic period (" + std::to_string(n) + ")");
  }

  Hypercube cube(width, height, pattern.bands);
  std::vector<int> ks;
  std::vector<double> vals;

  for (int c = 0; c < pattern.bands; ++c) {
    // Cell rows that carry samples of this band.
    std::vector<bool> cell_row(n, false);
    bool any = false;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        if (pattern.band_of[j * n + i] == c) {
          cell_row[j] = true;
          any = true;
        }
      }
    }
    if (!any) {
      throw ValidationError("band " + std::to_string(c) +
                            " has no samples in the mosaic pattern");
    }

    auto plane = cube.band(c);

    // Horizontal pass: rows holding samples become dense.
    std::vector<int> filled_rows;
    for (int y = 0; y < height; ++y) {
      if (!cell_row[y % n]) continue;
      ks.clear();
      vals.clear();
      for (int x = 0; x < width; ++x) {
        if (pattern.band_at(x, y) == c) {
          ks.push_back(x);
          vals.push_back(snapshot.at(x, y));
        }
      }
      if (ks.empty()) continue;  // row's cells for this band lie beyond width
      lerp_fill_1d(ks, vals, width, plane.data() + static_cast<std::size_t>(y) * width);
      filled_rows.push_back(y);
    }
    if (filled_rows.empty()) {
      throw ValidationError("band " + std::to_string(c) +
                            " has no samples inside the image");
    }

    // Vertical pass: interpolate the remaining rows column by column.
    std::vector<double> column(height);
    std::vector<double> row_vals(filled_rows.size());
    for (int x = 0; x < width; ++x) {
      for (std::size_t s = 0; s < filled_rows.size(); ++s) {
        row_vals[s] = plane[static_cast<std::size_t>(filled_rows[s]) * width + x];
      }
      lerp_fill_1d(filled_rows, row_vals, height, column.data());
      for (int y = 0; y < height; ++y) {
        plane[static_cast<std::size_t>(y) * width + x] = column[y];
      }
    }
  }
  return cube;
}

MsfaPattern load_pattern(std::istream& in, const std::string& origin) {
  MsfaPattern p;
  if (!(in >> p.period >> p.bands)) {
    throw FormatError(origin + ": expected header line \"n C\"");
  }
  if (p.period < 1 || p.period > 64) {
    throw FormatError(origin + ": implausible mosaic period " + std::to_string(p.period));
  }
  p.band_of.resize(static_cast<std::size_t>(p.period) * p.period);
  for (std::size_t k = 0; k < p.band_of.size(); ++k) {
    if (!(in >> p.band_of[k])) {
      throw FormatError(origin + ": expected " + std::to_string(p.band_of.size()) +
                        " band indices, got " + std::to_string(k));
    }
  }
  try {
    p.validate();
  } catch (const ValidationError& e) {
    throw FormatError(origin + ": " + e.what());
  }
  return p;
}

MsfaPattern load_pattern(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open pattern file " + path.string());
  return load_pattern(in, path.string());
}

}  // namespace hsmosaic::core
