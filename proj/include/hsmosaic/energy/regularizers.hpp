#pragma once

#include "hsmosaic/core/hypercube.hpp"
#include "hsmosaic/spectral/weights.hpp"

namespace hsmosaic::energy {

inline constexpr double kDefaultEpsVar = 1e-12;
inline constexpr double kDefaultEpsTv = 1e-6;

/// Term weights and smoothing constants of the combined regularizer.
struct RegWeights {
  double lambda_tik = 1.0;
  double lambda_tv = 1e-3;
  double lambda_corr = 1.0;
  double tau = 0.1;               // temperature of the band-pair weights
  double eps_var = kDefaultEpsVar;  // variance floor for the correlation term
  double eps_tv = kDefaultEpsTv;    // smoothing constant of the TV term

  void validate() const;
};

/// Term values and the analytic gradient of the combined regularizer.
/// r_corr, r_tik, r_tv are the unweighted term values;
/// r_total = lambda_tik*r_tik + lambda_tv*r_tv + lambda_corr*r_corr.
struct EnergyReport {
  double r_corr = 0.0;
  double r_tik = 0.0;
  double r_tv = 0.0;
  double r_total = 0.0;
  core::Hypercube gradient;
};

/// Forward difference along x: out(x,y) = in(x+1,y) - in(x,y), zero in the
/// last column. grad_y likewise with a zero last row.
core::Image grad_x(const core::Image& in);
core::Image grad_y(const core::Image& in);

/// Gradient-consistency score of one band pair:
///   -corr(grad_x I^{c1}, grad_x I^{c2}) - corr(grad_y I^{c1}, grad_y I^{c2})
/// with Pearson correlation taken over all entries of the difference images
/// (including the structural zero column/row). An axis whose gradient
/// standard deviation falls below eps_var contributes 0.
double corr_pair(const core::Hypercube& cube, int c1, int c2,
                 double eps_var = kDefaultEpsVar);

/// Weighted sum of corr_pair over all ordered band pairs c1 != c2; each
/// unordered pair therefore counts twice.
double corr_reg(const core::Hypercube& cube, const spectral::WeightMatrix& w,
                double eps_var = kDefaultEpsVar);

/// Sum of squared 5-point Laplacian responses over all bands and pixels,
/// with replicate padding at the borders.
double tikhonov_reg(const core::Hypercube& cube);

/// Smoothed anisotropic total variation: sum of phi over both forward
/// difference fields of every band, phi(t) = sqrt(t^2 + eps^2) - eps, so
/// phi(0) = 0 and phi -> |t| as eps -> 0.
double tv_reg(const core::Hypercube& cube, double eps_tv = kDefaultEpsTv);

/// Evaluates all three terms and assembles the exact gradient of the
/// weighted sum with respect to every voxel.
EnergyReport total_reg(const core::Hypercube& cube, const spectral::WeightMatrix& w,
                       const RegWeights& rw);

}  // namespace hsmosaic::energy
