#include "hsmosaic/energy/regularizers.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "hsmosaic/error.hpp"

namespace hsmosaic::energy {

namespace {

void diff_x(const double* u, int X, int Y, double* out) {
  for (int y = 0; y < Y; ++y) {
    const double* row = u + static_cast<std::size_t>(y) * X;
    double* orow = out + static_cast<std::size_t>(y) * X;
    for (int x = 0; x < X - 1; ++x) orow[x] = row[x + 1] - row[x];
    orow[X - 1] = 0.0;
  }
}

void diff_y(const double* u, int X, int Y, double* out) {
  for (int y = 0; y < Y - 1; ++y) {
    const double* row = u + static_cast<std::size_t>(y) * X;
    const double* next = row + X;
    double* orow = out + static_cast<std::size_t>(y) * X;
    for (int x = 0; x < X; ++x) orow[x] = next[x] - row[x];
  }
  for (int x = 0; x < X; ++x) out[static_cast<std::size_t>(Y - 1) * X + x] = 0.0;
}

// out += D_x^T v. Entries of v in the structural zero column never enter.
void add_diff_x_adjoint(const double* v, int X, int Y, double* out) {
  for (int y = 0; y < Y; ++y) {
    const double* vrow = v + static_cast<std::size_t>(y) * X;
    double* orow = out + static_cast<std::size_t>(y) * X;
    for (int x = 0; x < X - 1; ++x) {
      orow[x + 1] += vrow[x];
      orow[x] -= vrow[x];
    }
  }
}

void add_diff_y_adjoint(const double* v, int X, int Y, double* out) {
  for (int y = 0; y < Y - 1; ++y) {
    const double* vrow = v + static_cast<std::size_t>(y) * X;
    double* orow = out + static_cast<std::size_t>(y) * X;
    for (int x = 0; x < X; ++x) {
      orow[X + x] += vrow[x];
      orow[x] -= vrow[x];
    }
  }
}

// 5-point Laplacian with replicate padding.
void laplacian_replicate(const double* u, int X, int Y, double* out) {
  for (int y = 0; y < Y; ++y) {
    const int ym = y > 0 ? y - 1 : 0;
    const int yp = y < Y - 1 ? y + 1 : Y - 1;
    for (int x = 0; x < X; ++x) {
      const int xm = x > 0 ? x - 1 : 0;
      const int xp = x < X - 1 ? x + 1 : X - 1;
      out[static_cast<std::size_t>(y) * X + x] =
          u[static_cast<std::size_t>(y) * X + xm] + u[static_cast<std::size_t>(y) * X + xp] +
          u[static_cast<std::size_t>(ym) * X + x] + u[static_cast<std::size_t>(yp) * X + x] -
          4.0 * u[static_cast<std::size_t>(y) * X + x];
    }
  }
}

// out += coef * L^T v for the replicate-padded stencil, scattered readback.
void add_laplacian_adjoint(const double* v, int X, int Y, double coef, double* out) {
  for (int y = 0; y < Y; ++y) {
    const int ym = y > 0 ? y - 1 : 0;
    const int yp = y < Y - 1 ? y + 1 : Y - 1;
    for (int x = 0; x < X; ++x) {
      const int xm = x > 0 ? x - 1 : 0;
      const int xp = x < X - 1 ? x + 1 : X - 1;
      const double s = coef * v[static_cast<std::size_t>(y) * X + x];
      out[static_cast<std::size_t>(y) * X + xm] += s;
      out[static_cast<std::size_t>(y) * X + xp] += s;
      out[static_cast<std::size_t>(ym) * X + x] += s;
      out[static_cast<std::size_t>(yp) * X + x] += s;
      out[static_cast<std::size_t>(y) * X + x] -= 4.0 * s;
    }
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Demeans v in place and returns the sum of squares of the centered entries.
double center(std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double s2 = 0.0;
  for (double& x : v) {
    x -= mean;
    s2 += x * x;
  }
  return s2;
}

// Pearson correlation over raw (uncentered) planes; 0 if either standard
// deviation is below eps_var.
double pearson(const std::vector<double>& a, const std::vector<double>& b, double eps_var) {
  const std::size_t n = a.size();
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  const double floor2 = eps_var * eps_var * static_cast<double>(n);
  if (saa < floor2 || sbb < floor2) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

void require_min_size(const core::Hypercube& cube, int min_x, int min_y, const char* op) {
  if (cube.width < min_x || cube.height < min_y) {
    throw ValidationError(std::string(op) + " needs bands of at least " +
                          std::to_string(min_x) + "x" + std::to_string(min_y) + ", got " +
                          std::to_string(cube.width) + "x" + std::to_string(cube.height));
  }
}

}  // namespace

void RegWeights::validate() const {
  if (lambda_tik < 0.0 || lambda_tv < 0.0 || lambda_corr < 0.0) {
    throw ValidationError("regularizer weights must be non-negative");
  }
  if (!(tau > 0.0)) throw ValidationError("tau must be > 0");
  if (!(eps_var > 0.0)) throw ValidationError("eps_var must be > 0");
  if (!(eps_tv > 0.0)) throw ValidationError("eps_tv must be > 0");
}

core::Image grad_x(const core::Image& in) {
  if (in.width < 2) throw ValidationError("grad_x needs width >= 2");
  core::Image out(in.width, in.height);
  diff_x(in.data.data(), in.width, in.height, out.data.data());
  return out;
}

core::Image grad_y(const core::Image& in) {
  if (in.height < 2) throw ValidationError("grad_y needs height >= 2");
  core::Image out(in.width, in.height);
  diff_y(in.data.data(), in.width, in.height, out.data.data());
  return out;
}

double corr_pair(const core::Hypercube& cube, int c1, int c2, double eps_var) {
  if (c1 == c2) throw ValidationError("corr_pair needs two distinct bands");
  if (c1 < 0 || c2 < 0 || c1 >= cube.bands || c2 >= cube.bands) {
    throw ValidationError("corr_pair band index out of range");
  }
  require_min_size(cube, 2, 2, "corr_pair");
  const int X = cube.width, Y = cube.height;
  std::vector<double> g1(static_cast<std::size_t>(X) * Y), g2(g1.size());

  diff_x(cube.band(c1).data(), X, Y, g1.data());
  diff_x(cube.band(c2).data(), X, Y, g2.data());
  double value = -pearson(g1, g2, eps_var);

  diff_y(cube.band(c1).data(), X, Y, g1.data());
  diff_y(cube.band(c2).data(), X, Y, g2.data());
  value -= pearson(g1, g2, eps_var);
  return value;
}

double corr_reg(const core::Hypercube& cube, const spectral::WeightMatrix& w, double eps_var) {
  if (w.bands != cube.bands) {
    throw ValidationError("weight matrix bands do not match the cube");
  }
  if (cube.bands == 1) return 0.0;
  require_min_size(cube, 2, 2, "corr_reg");

  const int X = cube.width, Y = cube.height, C = cube.bands;
  const std::size_t n = static_cast<std::size_t>(X) * Y;
  const double floor2 = eps_var * eps_var * static_cast<double>(n);

  // Centered difference planes and their sums of squares, per band and axis.
  std::vector<std::vector<double>> gx(C), gy(C);
  std::vector<double> sxx(C), syy(C);
  for (int c = 0; c < C; ++c) {
    gx[c].resize(n);
    gy[c].resize(n);
    diff_x(cube.band(c).data(), X, Y, gx[c].data());
    diff_y(cube.band(c).data(), X, Y, gy[c].data());
    sxx[c] = center(gx[c]);
    syy[c] = center(gy[c]);
  }

  double total = 0.0;
  for (int c1 = 0; c1 < C; ++c1) {
    for (int c2 = c1 + 1; c2 < C; ++c2) {
      double pair = 0.0;
      if (sxx[c1] >= floor2 && sxx[c2] >= floor2) {
        pair -= dot(gx[c1], gx[c2]) / std::sqrt(sxx[c1] * sxx[c2]);
      }
      if (syy[c1] >= floor2 && syy[c2] >= floor2) {
        pair -= dot(gy[c1], gy[c2]) / std::sqrt(syy[c1] * syy[c2]);
      }
      total += 2.0 * w.at(c1, c2) * pair;  // ordered pairs: each counts twice
    }
  }
  return total;
}

double tikhonov_reg(const core::Hypercube& cube) {
  require_min_size(cube, 3, 3, "tikhonov_reg");
  const int X = cube.width, Y = cube.height;
  std::vector<double> lap(static_cast<std::size_t>(X) * Y);
  double total = 0.0;
  for (int c = 0; c < cube.bands; ++c) {
    laplacian_replicate(cube.band(c).data(), X, Y, lap.data());
    total += dot(lap, lap);
  }
  return total;
}

double tv_reg(const core::Hypercube& cube, double eps_tv) {
  require_min_size(cube, 2, 2, "tv_reg");
  if (!(eps_tv > 0.0)) throw ValidationError("eps_tv must be > 0");
  const int X = cube.width, Y = cube.height;
  const double eps2 = eps_tv * eps_tv;
  std::vector<double> g(static_cast<std::size_t>(X) * Y);
  double total = 0.0;
  for (int c = 0; c < cube.bands; ++c) {
    diff_x(cube.band(c).data(), X, Y, g.data());
    for (double t : g) total += std::sqrt(t * t + eps2) - eps_tv;
    diff_y(cube.band(c).data(), X, Y, g.data());
    for (double t : g) total += std::sqrt(t * t + eps2) - eps_tv;
  }
  return total;
}

EnergyReport total_reg(const core::Hypercube& cube, const spectral::WeightMatrix& w,
                       const RegWeights& rw) {
  rw.validate();
  require_min_size(cube, 3, 3, "total_reg");
  if (cube.bands > 1 && w.bands != cube.bands) {
    throw ValidationError("weight matrix bands do not match the cube");
  }

  const int X = cube.width, Y = cube.height, C = cube.bands;
  const std::size_t n = static_cast<std::size_t>(X) * Y;

  EnergyReport rep;
  rep.gradient = core::Hypercube(X, Y, C, 0.0);

  // Forward-difference planes per band; consumed raw by TV, then centered
  // in place for the correlation statistics.
  std::vector<std::vector<double>> gx(C), gy(C);
  for (int c = 0; c < C; ++c) {
    gx[c].resize(n);
    gy[c].resize(n);
    diff_x(cube.band(c).data(), X, Y, gx[c].data());
    diff_y(cube.band(c).data(), X, Y, gy[c].data());
  }

  // d(r_total)/d(gx[c]) and /d(gy[c]), lambda factors folded in; pulled back
  // through the difference adjoint at the end.
  std::vector<std::vector<double>> accx(C), accy(C);
  for (int c = 0; c < C; ++c) {
    accx[c].assign(n, 0.0);
    accy[c].assign(n, 0.0);
  }

  // Total variation.
  const double eps2 = rw.eps_tv * rw.eps_tv;
  for (int c = 0; c < C; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      const double tx = gx[c][i];
      const double ty = gy[c][i];
      const double rx = std::sqrt(tx * tx + eps2);
      const double ry = std::sqrt(ty * ty + eps2);
      rep.r_tv += (rx - rw.eps_tv) + (ry - rw.eps_tv);
      if (rw.lambda_tv != 0.0) {
        accx[c][i] += rw.lambda_tv * tx / rx;
        accy[c][i] += rw.lambda_tv * ty / ry;
      }
    }
  }

  // Gradient-consistency correlation over all ordered band pairs.
  if (C > 1) {
    std::vector<double> sxx(C), syy(C);
    for (int c = 0; c < C; ++c) {
      sxx[c] = center(gx[c]);
      syy[c] = center(gy[c]);
    }
    const double floor2 = rw.eps_var * rw.eps_var * static_cast<double>(n);
    for (int c1 = 0; c1 < C; ++c1) {
      for (int c2 = c1 + 1; c2 < C; ++c2) {
        const double w2 = 2.0 * w.at(c1, c2);
        for (int axis = 0; axis < 2; ++axis) {
          const auto& a = axis == 0 ? gx[c1] : gy[c1];
          const auto& b = axis == 0 ? gx[c2] : gy[c2];
          const double sa = axis == 0 ? sxx[c1] : syy[c1];
          const double sb = axis == 0 ? sxx[c2] : syy[c2];
          if (sa < floor2 || sb < floor2) continue;
          const double denom = std::sqrt(sa * sb);
          const double rho = dot(a, b) / denom;
          rep.r_corr -= w2 * rho;
          if (rw.lambda_corr != 0.0) {
            // d(-rho)/da_i = -(b_i/denom - rho*a_i/sa), a and b centered.
            auto& acc1 = axis == 0 ? accx[c1] : accy[c1];
            auto& acc2 = axis == 0 ? accx[c2] : accy[c2];
            const double k = rw.lambda_corr * w2;
            const double ka1 = k * rho / sa;
            const double kb1 = k / denom;
            const double ka2 = k * rho / sb;
            for (std::size_t i = 0; i < n; ++i) {
              acc1[i] += ka1 * a[i] - kb1 * b[i];
              acc2[i] += ka2 * b[i] - kb1 * a[i];
            }
          }
        }
      }
    }
  }

  // Pull the difference-domain sensitivities back to the voxel domain.
  if (rw.lambda_tv != 0.0 || (rw.lambda_corr != 0.0 && C > 1)) {
    for (int c = 0; c < C; ++c) {
      double* gband = rep.gradient.band(c).data();
      add_diff_x_adjoint(accx[c].data(), X, Y, gband);
      add_diff_y_adjoint(accy[c].data(), X, Y, gband);
    }
  }

  // Tikhonov.
  std::vector<double> lap(n);
  for (int c = 0; c < C; ++c) {
    laplacian_replicate(cube.band(c).data(), X, Y, lap.data());
    rep.r_tik += dot(lap, lap);
    if (rw.lambda_tik != 0.0) {
      add_laplacian_adjoint(lap.data(), X, Y, 2.0 * rw.lambda_tik,
                            rep.gradient.band(c).data());
    }
  }

  rep.r_total = rw.lambda_tik * rep.r_tik + rw.lambda_tv * rep.r_tv +
                rw.lambda_corr * rep.r_corr;
  return rep;
}

}  // namespace hsmosaic::energy
