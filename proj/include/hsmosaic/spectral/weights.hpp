#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace hsmosaic::spectral {

/// Per-band sensor response curves sampled on one shared wavelength grid.
struct SpectralResponseSet {
  std::vector<double> wavelengths_nm;           // strictly increasing
  std::vector<std::vector<double>> responses;   // C curves, same length as grid

  int bands() const { return static_cast<int>(responses.size()); }

  /// Throws ValidationError on negative samples, grid mismatch, or a
  /// non-increasing grid; throws DegenerateError if any curve has zero mass.
  void validate() const;

  /// Synthetic stand-in for tabulated sensor data: Gaussian bumps of the
  /// given FWHM with centers evenly spaced over [center_lo, center_hi],
  /// sampled at step_nm over [grid_lo, grid_hi].
  static SpectralResponseSet gaussian_bands(int bands, double center_lo_nm = 460.0,
                                            double center_hi_nm = 630.0,
                                            double fwhm_nm = 30.0,
                                            double grid_lo_nm = 400.0,
                                            double grid_hi_nm = 700.0,
                                            double step_nm = 1.0);

  /// Evenly spaced band centers matching gaussian_bands' defaults.
  static std::vector<double> default_centers(int bands, double center_lo_nm = 460.0,
                                             double center_hi_nm = 630.0);

  /// CSV: header "wavelength_nm,b0,...,b{C-1}", one row per sample.
  static SpectralResponseSet load_csv(std::istream& in, const std::string& origin = "<stream>");
  static SpectralResponseSet load_csv(const std::filesystem::path& path);
  void save_csv(std::ostream& out) const;
  void save_csv(const std::filesystem::path& path) const;
};

/// First-order Wasserstein distance between two response curves, each first
/// normalized to a unit-mass discrete distribution on the wavelength grid.
/// Computed as the integral of |CDF_p - CDF_q| over wavelength with
/// piecewise-constant CDFs between samples. Symmetric, >= 0, zero iff the
/// normalized curves coincide.
double wasserstein_1d(std::span<const double> p, std::span<const double> q,
                      std::span<const double> wavelengths_nm);

/// Distances computed on an nm grid are divided by this before the
/// exponential map: the dimensionless temperature (default 0.1) is
/// calibrated against micron-valued spectral distances, where the default
/// 16-band layout yields affinities spread over roughly [0.2, 0.9]. Keeping
/// nm here instead would push every off-diagonal weight below 1e-180 and
/// silently disable the correlation term.
inline constexpr double kNmPerMicron = 1000.0;

/// Pairwise band affinity w[c1][c2] = exp(-W_{c1,c2} / tau), with the
/// distance W expressed in microns (see kNmPerMicron).
struct WeightMatrix {
  int bands = 0;
  double tau = 0.1;
  std::vector<double> w;  // bands * bands, row-major

  double at(int c1, int c2) const { return w[static_cast<std::size_t>(c1) * bands + c2]; }

  /// Symmetric, unit diagonal, every entry in (0, 1].
  void validate() const;

  /// All-pairs weight 1 (equal coupling); handy for tests and ablations.
  static WeightMatrix ones(int bands);

  void save_csv(std::ostream& out) const;
  void save_csv(const std::filesystem::path& path) const;
};

/// Builds the weight matrix from response curves; tau > 0 sets how fast the
/// coupling decays with spectral distance.
WeightMatrix weight_matrix(const SpectralResponseSet& responses, double tau);

}  // namespace hsmosaic::spectral
