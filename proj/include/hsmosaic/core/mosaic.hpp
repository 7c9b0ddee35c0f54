#pragma once

#include <filesystem>
#include <iosfwd>

#include "hsmosaic/core/hypercube.hpp"

namespace hsmosaic::core {

/// Applies the MSFA selection operator: out(x,y) = cube(x, y, band_at(x,y)).
SnapshotMosaic mosaic_apply(const Hypercube& cube, const MsfaPattern& pattern);

/// Writes the measured snapshot values back into their cube positions:
/// result(x, y, band_at(x,y)) = snapshot(x,y), all other voxels unchanged.
/// mosaic_apply(result) == snapshot holds exactly afterwards.
Hypercube override_apply(const Hypercube& cube, const SnapshotMosaic& snapshot,
                         const MsfaPattern& pattern);

/// In-place variant of override_apply for iterative solvers.
void override_apply_inplace(Hypercube& cube, const SnapshotMosaic& snapshot,
                            const MsfaPattern& pattern);

/// Baseline demosaicking: per band, the measured pixels form a sparse
/// subgrid; the plane is filled by separable linear interpolation between
/// the nearest measured samples, clamping to the nearest sample outside
/// their span. Measured pixels are reproduced exactly.
Hypercube bilinear_demosaic(const SnapshotMosaic& snapshot, const MsfaPattern& pattern);

/// Pattern text format: first line "n C", then n rows of n band indices.
MsfaPattern load_pattern(std::istream& in, const std::string& origin = "<stream>");
MsfaPattern load_pattern(const std::filesystem::path& path);

}  // namespace hsmosaic::core
