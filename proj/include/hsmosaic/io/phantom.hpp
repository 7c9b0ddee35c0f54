#pragma once

#include <cstdint>
#include <string>

#include "hsmosaic/core/hypercube.hpp"

namespace hsmosaic::io {

enum class PhantomKind { kFlat, kGradientRamp, kEdges, kBlobs };

PhantomKind parse_phantom_kind(const std::string& name);
std::string phantom_kind_name(PhantomKind kind);

/// Synthetic ground-truth scene. Kinds:
///   flat          constant value everywhere
///   gradient-ramp smooth spatial ramp, affine within every band
///   edges         piecewise-constant regions cut by random lines; all bands
///                 share one smooth spectral profile scaled per region, so
///                 edge locations (and their relative strengths) coincide
///                 across bands
///   blobs         smooth background plus Gaussian blobs with per-blob
///                 spectral bumps
/// Values stay inside [0, 1]; everything is a deterministic function of the
/// spec (single 64-bit seed, mt19937_64 backed).
struct PhantomSpec {
  int width = 64;
  int height = 64;
  int bands = 16;
  PhantomKind kind = PhantomKind::kEdges;
  std::uint64_t seed = 0;
  double noise_sigma = 0.0;  // additive Gaussian, clamped back to [0, 1]
  int features = 3;          // cutting lines (edges) or blob count (blobs)
  double flat_value = 0.5;
  int mosaic_period = 4;     // width and height must divide by this

  void validate() const;
};

core::Hypercube gen_phantom(const PhantomSpec& spec);

}  // namespace hsmosaic::io
