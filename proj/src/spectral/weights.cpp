#include "hsmosaic/spectral/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include "hsmosaic/error.hpp"

namespace hsmosaic::spectral {

namespace {

double curve_mass(std::span<const double> p) {
  double m = 0.0;
  for (double v : p) {
    if (v < 0.0 || !std::isfinite(v)) {
      throw ValidationError("response curves must be finite and non-negative");
    }
    m += v;
  }
  return m;
}

}  // namespace

void SpectralResponseSet::validate() const {
  if (wavelengths_nm.size() < 1) throw ValidationError("empty wavelength grid");
  for (std::size_t i = 1; i < wavelengths_nm.size(); ++i) {
    if (!(wavelengths_nm[i] > wavelengths_nm[i - 1])) {
      throw ValidationError("wavelength grid must be strictly increasing");
    }
  }
  if (responses.empty()) throw ValidationError("response set has no curves");
  for (std::size_t c = 0; c < responses.size(); ++c) {
    if (responses[c].size() != wavelengths_nm.size()) {
      throw ValidationError("curve " + std::to_string(c) +
                            " length does not match the wavelength grid");
    }
    if (curve_mass(responses[c]) <= 0.0) {
      throw DegenerateError("curve " + std::to_string(c) + " has zero mass");
    }
  }
}

SpectralResponseSet SpectralResponseSet::gaussian_bands(int bands, double center_lo_nm,
                                                        double center_hi_nm, double fwhm_nm,
                                                        double grid_lo_nm, double grid_hi_nm,
                                                        double step_nm) {
  if (bands < 1 || fwhm_nm <= 0.0 || step_nm <= 0.0 || grid_hi_nm <= grid_lo_nm) {
    throw ValidationError("invalid gaussian response parameters");
  }
  SpectralResponseSet set;
  for (double lam = grid_lo_nm; lam <= grid_hi_nm + 0.5 * step_nm; lam += step_nm) {
    set.wavelengths_nm.push_back(lam);
  }
  const double sigma = fwhm_nm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  const auto centers = default_centers(bands, center_lo_nm, center_hi_nm);
  set.responses.resize(bands);
  for (int c = 0; c < bands; ++c) {
    set.responses[c].reserve(set.wavelengths_nm.size());
    for (double lam : set.wavelengths_nm) {
      const double z = (lam - centers[c]) / sigma;
      set.responses[c].push_back(std::exp(-0.5 * z * z));
    }
  }
  set.validate();
  return set;
}

std::vector<double> SpectralResponseSet::default_centers(int bands, double center_lo_nm,
                                                         double center_hi_nm) {
  std::vector<double> centers(bands);
  for (int c = 0; c < bands; ++c) {
    const double t = bands > 1 ? static_cast<double>(c) / (bands - 1) : 0.5;
    centers[c] = center_lo_nm + t * (center_hi_nm - center_lo_nm);
  }
  return centers;
}

SpectralResponseSet SpectralResponseSet::load_csv(std::istream& in, const std::string& origin) {
  SpectralResponseSet set;
  std::string line;
  if (!std::getline(in, line)) throw FormatError(origin + ": empty response CSV");
  std::size_t columns = 1;
  for (char ch : line) {
    if (ch == ',') ++columns;
  }
  if (columns < 2) throw FormatError(origin + ": response CSV needs at least one band column");
  set.responses.resize(columns - 1);

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    for (std::size_t col = 0; col < columns; ++col) {
      if (!std::getline(row, cell, ',')) {
        throw FormatError(origin + ":" + std::to_string(lineno) + ": expected " +
                          std::to_string(columns) + " columns");
      }
      double value = 0.0;
      try {
        value = std::stod(cell);
      } catch (const std::exception&) {
        throw FormatError(origin + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
      if (col == 0) {
        set.wavelengths_nm.push_back(value);
      } else {
        set.responses[col - 1].push_back(value);
      }
    }
  }
  try {
    set.validate();
  } catch (const ValidationError& e) {
    throw FormatError(origin + ": " + e.what());
  }
  return set;
}

SpectralResponseSet SpectralResponseSet::load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open response CSV " + path.string());
  return load_csv(in, path.string());
}

void SpectralResponseSet::save_csv(std::ostream& out) const {
  out << "wavelength_nm";
  for (int c = 0; c < bands(); ++c) out << ",b" << c;
  out << "\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < wavelengths_nm.size(); ++i) {
    out << wavelengths_nm[i];
    for (int c = 0; c < bands(); ++c) out << "," << responses[c][i];
    out << "\n";
  }
}

void SpectralResponseSet::save_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write response CSV " + path.string());
  save_csv(out);
}

double wasserstein_1d(std::span<const double> p, std::span<const double> q,
                      std::span<const double> wavelengths_nm) {
  if (p.size() != q.size() || p.size() != wavelengths_nm.size()) {
    throw ValidationError("wasserstein_1d: curves and grid must share one length");
  }
  if (p.empty()) throw ValidationError("wasserstein_1d: empty curves");
  const double mp = curve_mass(p);
  const double mq = curve_mass(q);
  if (mp <= 0.0 || mq <= 0.0) {
    throw DegenerateError("wasserstein_1d: all-zero curve has no distribution");
  }

  // Integral of |CDF_p - CDF_q| with point masses at the grid samples: the
  // CDFs are constant on each [lambda_i, lambda_{i+1}).
  double cdf_p = 0.0, cdf_q = 0.0, dist = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    cdf_p += p[i] / mp;
    cdf_q += q[i] / mq;
    dist += std::abs(cdf_p - cdf_q) * (wavelengths_nm[i + 1] - wavelengths_nm[i]);
  }
  return dist;
}

void WeightMatrix::validate() const {
  if (bands < 1 || w.size() != static_cast<std::size_t>(bands) * bands) {
    throw ValidationError("weight matrix size mismatch");
  }
  if (!(tau > 0.0)) throw ValidationError("temperature tau must be > 0");
  for (int c1 = 0; c1 < bands; ++c1) {
    if (at(c1, c1) != 1.0) throw ValidationError("weight matrix diagonal must be 1");
    for (int c2 = 0; c2 < bands; ++c2) {
      const double v = at(c1, c2);
      if (!(v > 0.0 && v <= 1.0)) throw ValidationError("weights must lie in (0, 1]");
      if (v != at(c2, c1)) throw ValidationError("weight matrix must be symmetric");
    }
  }
}

WeightMatrix WeightMatrix::ones(int bands) {
  WeightMatrix m;
  m.bands = bands;
  m.w.assign(static_cast<std::size_t>(bands) * bands, 1.0);
  return m;
}

void WeightMatrix::save_csv(std::ostream& out) const {
  for (int c = 0; c < bands; ++c) out << (c ? "," : "") << "b" << c;
  out << "\n";
  out << std::setprecision(17);
  for (int c1 = 0; c1 < bands; ++c1) {
    for (int c2 = 0; c2 < bands; ++c2) out << (c2 ? "," : "") << at(c1, c2);
    out << "\n";
  }
}

void WeightMatrix::save_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write weight CSV " + path.string());
  save_csv(out);
}

WeightMatrix weight_matrix(const SpectralResponseSet& responses, double tau) {
  if (!(tau > 0.0)) throw ValidationError("temperature tau must be > 0");
  responses.validate();
  const int bands = responses.bands();
  WeightMatrix m;
  m.bands = bands;
  m.tau = tau;
  m.w.assign(static_cast<std::size_t>(bands) * bands, 1.0);
  for (int c1 = 0; c1 < bands; ++c1) {
    for (int c2 = c1 + 1; c2 < bands; ++c2) {
      const double dist_um =
          wasserstein_1d(responses.responses[c1], responses.responses[c2],
                         responses.wavelengths_nm) /
          kNmPerMicron;
      // exp(-dist/tau) is positive in exact arithmetic but can underflow to
      // zero for distant bands at small tau; pin it at the smallest normal.
      const double weight =
          std::max(std::exp(-dist_um / tau), std::numeric_limits<double>::min());
      m.w[static_cast<std::size_t>(c1) * bands + c2] = weight;
      m.w[static_cast<std::size_t>(c2) * bands + c1] = weight;
    }
  }
  return m;
}

}  // namespace hsmosaic::spectral
