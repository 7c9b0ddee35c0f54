#pragma once

#include "hsmosaic/core/hypercube.hpp"

namespace hsmosaic::metrics {

struct MetricReport {
  double ssim = 0.0;
  double psnr_db = 0.0;  // +infinity when the cubes are identical
  double sam_rad = 0.0;
};

/// 10*log10(peak^2 / MSE) over all voxels; +infinity when MSE is zero.
double psnr(const core::Hypercube& test, const core::Hypercube& ref, double peak = 1.0);

/// Single-scale SSIM per band, mean over bands: 11x11 Gaussian window
/// (sigma 1.5), C1 = (0.01*peak)^2, C2 = (0.03*peak)^2, averaged over the
/// valid region only (no padding). Bands must be at least 11x11.
double ssim(const core::Hypercube& test, const core::Hypercube& ref, double peak = 1.0);

/// Mean spectral angle in radians: per pixel, the angle between the C-length
/// test and reference spectra (computed in the numerically stable half-angle
/// form, so identical spectra give exactly zero); pixels where either
/// spectrum has norm below 1e-12 contribute zero.
double sam(const core::Hypercube& test, const core::Hypercube& ref);

MetricReport evaluate_all(const core::Hypercube& test, const core::Hypercube& ref,
                          double peak = 1.0);

}  // namespace hsmosaic::metrics
