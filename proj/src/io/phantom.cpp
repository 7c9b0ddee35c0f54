#include "hsmosaic/io/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hsmosaic/error.hpp"

namespace hsmosaic::io {

namespace {

// Uniform doubles built directly from the raw 64-bit stream, so values do
// not depend on the standard library's distribution internals.
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double next_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * next_unit(rng);
}

double next_gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - next_unit(rng);  // (0, 1]
  const double u2 = next_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Shared smooth spectral profile, strictly positive, peaks mid-range.
double profile(int c, int bands) {
  return 0.6 + 0.4 * std::sin(std::numbers::pi * (c + 0.5) / bands);
}

void add_noise_and_clamp(core::Hypercube& cube, double sigma, std::mt19937_64& rng) {
  if (sigma > 0.0) {
    for (double& v : cube.data) v += sigma * next_gaussian(rng);
  }
  for (double& v : cube.data) v = std::clamp(v, 0.0, 1.0);
}

core::Hypercube gen_flat(const PhantomSpec& spec) {
  return core::Hypercube(spec.width, spec.height, spec.bands, spec.flat_value);
}

core::Hypercube gen_ramp(const PhantomSpec& spec) {
  core::Hypercube cube(spec.width, spec.height, spec.bands);
  const double dx = spec.width > 1 ? 1.0 / (spec.width - 1) : 0.0;
  const double dy = spec.height > 1 ? 1.0 / (spec.height - 1) : 0.0;
  for (int c = 0; c < spec.bands; ++c) {
    const double p = profile(c, spec.bands);
    for (int y = 0; y < spec.height; ++y) {
      for (int x = 0; x < spec.width; ++x) {
        cube.at(x, y, c) = p * (0.15 + 0.35 * (x * dx + y * dy));
      }
    }
  }
  return cube;
}

core::Hypercube gen_edges(const PhantomSpec& spec, std::mt19937_64& rng) {
  const int lines = spec.features;
  struct Line {
    double px, py, nx, ny;
  };
  std::vector<Line> cuts(lines);
  for (auto& line : cuts) {
    line.px = next_in(rng, 0.25, 0.75) * spec.width;
    line.py = next_in(rng, 0.25, 0.75) * spec.height;
    const double theta = next_in(rng, 0.0, std::numbers::pi);
    line.nx = std::cos(theta);
    line.ny = std::sin(theta);
  }
  // One amplitude per sign-pattern cell; bands share the spectral profile so
  // every inter-region contrast scales identically across bands.
  std::vector<double> amplitude(std::size_t{1} << lines);
  for (double& a : amplitude) a = next_in(rng, 0.25, 0.95);

  core::Hypercube cube(spec.width, spec.height, spec.bands);
  std::vector<double> p(spec.bands);
  for (int c = 0; c < spec.bands; ++c) p[c] = profile(c, spec.bands);
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      std::size_t region = 0;
      for (int k = 0; k < lines; ++k) {
        const double side = (x + 0.5 - cuts[k].px) * cuts[k].nx +
                            (y + 0.5 - cuts[k].py) * cuts[k].ny;
        region |= static_cast<std::size_t>(side > 0.0) << k;
      }
      const double a = amplitude[region];
      for (int c = 0; c < spec.bands; ++c) cube.at(x, y, c) = a * p[c];
    }
  }
  return cube;
}

core::Hypercube gen_blobs(const PhantomSpec& spec, std::mt19937_64& rng) {
  struct Blob {
    double cx, cy, sigma, amp, band_center, band_width;
  };
  const double extent = std::min(spec.width, spec.height);
  std::vector<Blob> blobs(spec.features);
  for (auto& b : blobs) {
    b.cx = next_in(rng, 0.15, 0.85) * spec.width;
    b.cy = next_in(rng, 0.15, 0.85) * spec.height;
    b.sigma = next_in(rng, extent / 12.0, extent / 5.0);
    b.amp = next_in(rng, 0.15, 0.4);
    b.band_center = next_in(rng, 0.0, spec.bands - 1.0);
    b.band_width = next_in(rng, spec.bands / 8.0, spec.bands / 2.0);
  }

  core::Hypercube cube(spec.width, spec.height, spec.bands);
  for (int c = 0; c < spec.bands; ++c) {
    const double bg = 0.25 + 0.15 * std::cos(2.0 * std::numbers::pi * (c + 0.5) / spec.bands);
    for (int y = 0; y < spec.height; ++y) {
      for (int x = 0; x < spec.width; ++x) {
        double v = bg;
        for (const auto& b : blobs) {
          const double dx = x + 0.5 - b.cx;
          const double dy = y + 0.5 - b.cy;
          const double spatial = std::exp(-(dx * dx + dy * dy) / (2.0 * b.sigma * b.sigma));
          const double dc = (c - b.band_center) / b.band_width;
          v += b.amp * spatial * std::exp(-0.5 * dc * dc);
        }
        cube.at(x, y, c) = v;
      }
    }
  }
  const double peak = *std::max_element(cube.data.begin(), cube.data.end());
  if (peak > 1.0) {
    for (double& v : cube.data) v /= peak;
  }
  return cube;
}

}  // namespace

PhantomKind parse_phantom_kind(const std::string& name) {
  if (name == "flat") return PhantomKind::kFlat;
  if (name == "gradient-ramp" || name == "ramp") return PhantomKind::kGradientRamp;
  if (name == "edges") return PhantomKind::kEdges;
  if (name == "blobs") return PhantomKind::kBlobs;
  throw ValidationError("unknown phantom kind '" + name +
                        "' (expected flat|gradient-ramp|edges|blobs)");
}

std::string phantom_kind_name(PhantomKind kind) {
  switch (kind) {
    case PhantomKind::kFlat: return "flat";
    case PhantomKind::kGradientRamp: return "gradient-ramp";
    case PhantomKind::kEdges: return "edges";
    case PhantomKind::kBlobs: return "blobs";
  }
  return "?";
}

void PhantomSpec::validate() const {
  if (width < 1 || height < 1 || bands < 1) {
    throw ValidationError("phantom dimensions must be positive");
  }
  if (mosaic_period < 1) throw ValidationError("mosaic period must be >= 1");
  if (width % mosaic_period != 0 || height % mosaic_period != 0) {
    throw ValidationError("phantom dimensions must divide by the mosaic period");
  }
  if (noise_sigma < 0.0) throw ValidationError("noise sigma must be >= 0");
  if (features < 1 || features > 12) {
    throw ValidationError("feature count must lie in [1, 12]");
  }
  if (flat_value < 0.0 || flat_value > 1.0) {
    throw ValidationError("flat value must lie in [0, 1]");
  }
}

core::Hypercube gen_phantom(const PhantomSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  core::Hypercube cube;
  switch (spec.kind) {
    case PhantomKind::kFlat: cube = gen_flat(spec); break;
    case PhantomKind::kGradientRamp: cube = gen_ramp(spec); break;
    case PhantomKind::kEdges: cube = gen_edges(spec, rng); break;
    case PhantomKind::kBlobs: cube = gen_blobs(spec, rng); break;
  }
  add_noise_and_clamp(cube, spec.noise_sigma, rng);
  return cube;
}

}  // namespace hsmosaic::io
