#include "hsmosaic/metrics/quality.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hsmosaic/error.hpp"

namespace hsmosaic::metrics {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kK1 = 0.01;
constexpr double kK2 = 0.03;
constexpr double kSamNormFloor = 1e-12;

void check_same_shape(const core::Hypercube& a, const core::Hypercube& b) {
  if (a.width != b.width || a.height != b.height || a.bands != b.bands) {
    throw ValidationError("metric inputs must share dimensions, got " +
                          std::to_string(a.width) + "x" + std::to_string(a.height) + "x" +
                          std::to_string(a.bands) + " vs " + std::to_string(b.width) + "x" +
                          std::to_string(b.height) + "x" + std::to_string(b.bands));
  }
}

std::vector<double> gaussian_kernel() {
  std::vector<double> k(kWindow);
  const int half = kWindow / 2;
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - half;
    k[i] = std::exp(-d * d / (2.0 * kSigma * kSigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Separable valid-region convolution with the 11-tap kernel: output is
// (X-10) x (Y-10).
void convolve_valid(const double* in, int X, int Y, const std::vector<double>& k,
                    std::vector<double>& tmp, std::vector<double>& out) {
  const int ox = X - kWindow + 1;
  const int oy = Y - kWindow + 1;
  tmp.assign(static_cast<std::size_t>(ox) * Y, 0.0);
  for (int y = 0; y < Y; ++y) {
    const double* row = in + static_cast<std::size_t>(y) * X;
    for (int x = 0; x < ox; ++x) {
      double s = 0.0;
      for (int t = 0; t < kWindow; ++t) s += k[t] * row[x + t];
      tmp[static_cast<std::size_t>(y) * ox + x] = s;
    }
  }
  out.assign(static_cast<std::size_t>(ox) * oy, 0.0);
  for (int y = 0; y < oy; ++y) {
    for (int x = 0; x < ox; ++x) {
      double s = 0.0;
      for (int t = 0; t < kWindow; ++t) {
        s += k[t] * tmp[static_cast<std::size_t>(y + t) * ox + x];
      }
      out[static_cast<std::size_t>(y) * ox + x] = s;
    }
  }
}

}  // namespace

double psnr(const core::Hypercube& test, const core::Hypercube& ref, double peak) {
  check_same_shape(test, ref);
  if (!(peak > 0.0)) throw ValidationError("psnr peak must be > 0");
  double mse = 0.0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const double d = test.data[i] - ref.data[i];
    mse += d * d;
  }
  mse /= static_cast<double>(test.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

double ssim(const core::Hypercube& test, const core::Hypercube& ref, double peak) {
  check_same_shape(test, ref);
  if (!(peak > 0.0)) throw ValidationError("ssim peak must be > 0");
  if (test.width < kWindow || test.height < kWindow) {
    throw ValidationError("ssim needs bands of at least 11x11");
  }
  const double c1 = (kK1 * peak) * (kK1 * peak);
  const double c2 = (kK2 * peak) * (kK2 * peak);
  const int X = test.width, Y = test.height;
  const std::size_t n = static_cast<std::size_t>(X) * Y;
  static const std::vector<double> kernel = gaussian_kernel();

  std::vector<double> prod(n), tmp;
  std::vector<double> mu_t, mu_r, m_tt, m_rr, m_tr;
  double band_mean_sum = 0.0;
  for (int c = 0; c < test.bands; ++c) {
    const double* t = test.band(c).data();
    const double* r = ref.band(c).data();
    convolve_valid(t, X, Y, kernel, tmp, mu_t);
    convolve_valid(r, X, Y, kernel, tmp, mu_r);
    for (std::size_t i = 0; i < n; ++i) prod[i] = t[i] * t[i];
    convolve_valid(prod.data(), X, Y, kernel, tmp, m_tt);
    for (std::size_t i = 0; i < n; ++i) prod[i] = r[i] * r[i];
    convolve_valid(prod.data(), X, Y, kernel, tmp, m_rr);
    for (std::size_t i = 0; i < n; ++i) prod[i] = t[i] * r[i];
    convolve_valid(prod.data(), X, Y, kernel, tmp, m_tr);

    double acc = 0.0;
    for (std::size_t i = 0; i < mu_t.size(); ++i) {
      const double var_t = m_tt[i] - mu_t[i] * mu_t[i];
      const double var_r = m_rr[i] - mu_r[i] * mu_r[i];
      const double cov = m_tr[i] - mu_t[i] * mu_r[i];
      const double num = (2.0 * mu_t[i] * mu_r[i] + c1) * (2.0 * cov + c2);
      const double den = (mu_t[i] * mu_t[i] + mu_r[i] * mu_r[i] + c1) * (var_t + var_r + c2);
      acc += num / den;
    }
    band_mean_sum += acc / static_cast<double>(mu_t.size());
  }
  return band_mean_sum / test.bands;
}

double sam(const core::Hypercube& test, const core::Hypercube& ref) {
  check_same_shape(test, ref);
  const int X = test.width, Y = test.height, C = test.bands;
  const std::size_t plane = static_cast<std::size_t>(X) * Y;
  double total = 0.0;
  for (std::size_t p = 0; p < plane; ++p) {
    double ntt = 0.0, nrr = 0.0;
    for (int c = 0; c < C; ++c) {
      const double tv = test.data[static_cast<std::size_t>(c) * plane + p];
      const double rv = ref.data[static_cast<std::size_t>(c) * plane + p];
      ntt += tv * tv;
      nrr += rv * rv;
    }
    const double nt = std::sqrt(ntt);
    const double nr = std::sqrt(nrr);
    if (nt < kSamNormFloor || nr < kSamNormFloor) continue;
    // Half-angle form on the normalized spectra: acos(dot/(nt*nr)) loses
    // ~1e-8 of precision near parallel spectra, this stays exact there.
    double dm = 0.0, dp = 0.0;
    for (int c = 0; c < C; ++c) {
      const double u = test.data[static_cast<std::size_t>(c) * plane + p] / nt;
      const double v = ref.data[static_cast<std::size_t>(c) * plane + p] / nr;
      dm += (u - v) * (u - v);
      dp += (u + v) * (u + v);
    }
    total += 2.0 * std::atan2(std::sqrt(dm), std::sqrt(dp));
  }
  return total / static_cast<double>(plane);
}

MetricReport evaluate_all(const core::Hypercube& test, const core::Hypercube& ref,
                          double peak) {
  return {ssim(test, ref, peak), psnr(test, ref, peak), sam(test, ref)};
}

}  // namespace hsmosaic::metrics
