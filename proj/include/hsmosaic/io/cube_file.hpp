#pragma once

#include <filesystem>

#include "hsmosaic/core/hypercube.hpp"

namespace hsmosaic::io {

/// Binary cube format:
///   line 1: magic "HSC1"
///   line 2: "X Y C lo hi" (ASCII, space separated)
///   payload: X*Y*C little-endian 32-bit floats, band-major then row-major
///            (c slowest, then y, then x).
/// Values outside float range or non-finite are rejected on save; corrupt
/// headers or truncated payloads raise FormatError with byte counts.
void save_cube(const core::Hypercube& cube, const std::filesystem::path& path);
core::Hypercube load_cube(const std::filesystem::path& path);

/// Snapshot mosaics are stored as single-band cubes (C = 1) in the same
/// container format.
void save_mosaic(const core::SnapshotMosaic& mosaic, const std::filesystem::path& path);
core::SnapshotMosaic load_mosaic(const std::filesystem::path& path);

}  // namespace hsmosaic::io
