#include <cmath>
#include <vector>

#include "doctest.h"
#include "hsmosaic/energy/regularizers.hpp"
#include "hsmosaic/error.hpp"
#include "test_support.hpp"

using namespace hsmosaic;
using testsupport::fd_gradient;
using testsupport::lattice_cube;
using testsupport::max_rel_err;

namespace {

spectral::WeightMatrix synthetic_weights(int bands) {
  return spectral::weight_matrix(spectral::SpectralResponseSet::gaussian_bands(bands), 0.1);
}

}  // namespace

TEST_CASE("forward differences keep a structural zero border") {
  core::Image img(3, 2);
  // 1 4 9
  // 0 2 6
  img.data = {1, 4, 9, 0, 2, 6};
  const auto gx = energy::grad_x(img);
  const auto gy = energy::grad_y(img);
  CHECK(gx.data == std::vector<double>{3, 5, 0, 2, 4, 0});
  CHECK(gy.data == std::vector<double>{-1, -2, -3, 0, 0, 0});
  CHECK_THROWS_AS(energy::grad_x(core::Image(1, 5)), ValidationError);
  CHECK_THROWS_AS(energy::grad_y(core::Image(5, 1)), ValidationError);
}

TEST_CASE("corr_pair scores gradient alignment") {
  const auto base = lattice_cube(7, 6, 1, 3);
  core::Hypercube cube(7, 6, 3);
  cube.set_band(0, base.band_image(0));
  core::Image scaled(7, 6), flipped(7, 6);
  for (std::size_t i = 0; i < scaled.data.size(); ++i) {
    scaled.data[i] = 0.4 * base.data[i] + 0.2;  // same gradients up to scale
    flipped.data[i] = 1.0 - base.data[i];       // opposite gradients
  }
  cube.set_band(1, scaled);
  cube.set_band(2, flipped);

  CHECK(std::abs(energy::corr_pair(cube, 0, 1) - (-2.0)) < 1e-9);
  CHECK(std::abs(energy::corr_pair(cube, 0, 2) - 2.0) < 1e-9);
  CHECK(energy::corr_pair(cube, 0, 1) == energy::corr_pair(cube, 1, 0));

  CHECK_THROWS_AS(energy::corr_pair(cube, 1, 1), ValidationError);
  CHECK_THROWS_AS(energy::corr_pair(cube, 0, 3), ValidationError);
}

TEST_CASE("corr_pair matches a direct Pearson computation") {
  const auto cube = lattice_cube(9, 8, 2, 17);
  const int n = 9 * 8;
  std::vector<double> ax(n, 0.0), bx(n, 0.0), ay(n, 0.0), by(n, 0.0);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 9; ++x) {
      const int i = y * 9 + x;
      if (x < 8) {
        ax[i] = cube.at(x + 1, y, 0) - cube.at(x, y, 0);
        bx[i] = cube.at(x + 1, y, 1) - cube.at(x, y, 1);
      }
      if (y < 7) {
        ay[i] = cube.at(x, y + 1, 0) - cube.at(x, y, 0);
        by[i] = cube.at(x, y + 1, 1) - cube.at(x, y, 1);
      }
    }
  }
  const double expected =
      -testsupport::naive_pearson(ax, bx) - testsupport::naive_pearson(ay, by);
  CHECK(std::abs(energy::corr_pair(cube, 0, 1) - expected) < 1e-12);
}

TEST_CASE("a constant band is excluded by the variance floor") {
  core::Hypercube cube(6, 6, 2, 0.25);  // band 1 constant
  const auto varied = lattice_cube(6, 6, 1, 9);
  cube.set_band(0, varied.band_image(0));
  CHECK(energy::corr_pair(cube, 0, 1) == 0.0);
  const auto rep = energy::total_reg(cube, spectral::WeightMatrix::ones(2), {});
  CHECK(rep.r_corr == 0.0);
}

TEST_CASE("corr_reg sums weighted ordered pairs") {
  const auto cube = lattice_cube(8, 7, 4, 23);
  const auto w = synthetic_weights(4);
  double expected = 0.0;
  for (int c1 = 0; c1 < 4; ++c1) {
    for (int c2 = 0; c2 < 4; ++c2) {
      if (c1 != c2) expected += w.at(c1, c2) * energy::corr_pair(cube, c1, c2);
    }
  }
  CHECK(std::abs(energy::corr_reg(cube, w) - expected) < 1e-10);
  CHECK(energy::corr_reg(lattice_cube(8, 7, 1, 3), spectral::WeightMatrix::ones(1)) == 0.0);
  CHECK_THROWS_AS(energy::corr_reg(cube, spectral::WeightMatrix::ones(3)), ValidationError);
}

TEST_CASE("tikhonov_reg on a hand-computed impulse") {
  core::Hypercube cube(3, 3, 1, 0.0);
  cube.at(1, 1, 0) = 1.0;
  // Replicate-padded 5-point Laplacian: center -4, edge neighbours 1,
  // corners 0; sum of squares = 16 + 4.
  CHECK(energy::tikhonov_reg(cube) == 20.0);

  auto scaled = cube;
  for (double& v : scaled.data) v *= 3.0;
  CHECK(std::abs(energy::tikhonov_reg(scaled) - 9.0 * 20.0) < 1e-12);

  CHECK(energy::tikhonov_reg(core::Hypercube(5, 4, 2, 0.7)) == 0.0);
  CHECK_THROWS_AS(energy::tikhonov_reg(core::Hypercube(2, 5, 1)), ValidationError);
}

TEST_CASE("tv_reg approaches the exact anisotropic total variation") {
  const auto cube = lattice_cube(9, 7, 2, 31);
  double exact = 0.0;
  for (int c = 0; c < 2; ++c) {
    for (int y = 0; y < 7; ++y) {
      for (int x = 0; x < 9; ++x) {
        if (x < 8) exact += std::abs(cube.at(x + 1, y, c) - cube.at(x, y, c));
        if (y < 6) exact += std::abs(cube.at(x, y + 1, c) - cube.at(x, y, c));
      }
    }
  }
  CHECK(std::abs(energy::tv_reg(cube, 1e-9) - exact) < 1e-6);
  CHECK(energy::tv_reg(core::Hypercube(9, 7, 2, 0.4)) == 0.0);  // phi(0) = 0
  CHECK_THROWS_AS(energy::tv_reg(cube, 0.0), ValidationError);
}

TEST_CASE("total_reg term values agree with the standalone terms") {
  const auto cube = lattice_cube(10, 9, 5, 37);
  const auto w = synthetic_weights(5);
  energy::RegWeights rw;  // defaults: 1, 1e-3, 1
  const auto rep = energy::total_reg(cube, w, rw);
  CHECK(std::abs(rep.r_corr - energy::corr_reg(cube, w)) < 1e-10);
  CHECK(std::abs(rep.r_tik - energy::tikhonov_reg(cube)) < 1e-10);
  CHECK(std::abs(rep.r_tv - energy::tv_reg(cube)) < 1e-10);
  const double total =
      rw.lambda_tik * rep.r_tik + rw.lambda_tv * rep.r_tv + rw.lambda_corr * rep.r_corr;
  CHECK(rep.r_total == total);
  CHECK(rep.gradient.width == 10);
  CHECK(rep.gradient.bands == 5);
}

TEST_CASE("analytic gradients match central finite differences") {
  const auto w = synthetic_weights(4);

  SUBCASE("tikhonov term") {
    const auto cube = lattice_cube(8, 6, 4, 41);
    energy::RegWeights rw{.lambda_tik = 1.0, .lambda_tv = 0.0, .lambda_corr = 0.0};
    const auto analytic = energy::total_reg(cube, w, rw).gradient;
    const auto fd = fd_gradient(cube, [](const core::Hypercube& c) {
      return energy::tikhonov_reg(c);
    });
    CHECK(max_rel_err(fd, analytic) < 1e-5);
  }
  SUBCASE("tv term") {
    const auto cube = lattice_cube(8, 6, 4, 43);
    energy::RegWeights rw{.lambda_tik = 0.0, .lambda_tv = 1.0, .lambda_corr = 0.0};
    const auto analytic = energy::total_reg(cube, w, rw).gradient;
    // h = 1e-3: the TV gradient has near-cancelling +/-1 contributions, so
    // the default step leaves the difference quotient dominated by roundoff
    // of the ~50-unit term value. Every lattice diff is 0 or >= 1/37, far
    // from both h and eps_tv, so the larger step adds no truncation error.
    const auto fd = fd_gradient(
        cube, [](const core::Hypercube& c) { return energy::tv_reg(c); }, 1e-3);
    CHECK(max_rel_err(fd, analytic) < 1e-5);
  }
  SUBCASE("correlation term") {
    const auto cube = lattice_cube(8, 6, 4, 47);
    energy::RegWeights rw{.lambda_tik = 0.0, .lambda_tv = 0.0, .lambda_corr = 1.0};
    const auto analytic = energy::total_reg(cube, w, rw).gradient;
    const auto fd = fd_gradient(cube, [&w](const core::Hypercube& c) {
      return energy::corr_reg(c, w);
    });
    CHECK(max_rel_err(fd, analytic) < 1e-5);
  }
  SUBCASE("combined energy at default weights") {
    const auto cube = lattice_cube(8, 6, 4, 53);
    energy::RegWeights rw;
    const auto analytic = energy::total_reg(cube, w, rw).gradient;
    const auto fd = fd_gradient(cube, [&](const core::Hypercube& c) {
      return rw.lambda_tik * energy::tikhonov_reg(c) + rw.lambda_tv * energy::tv_reg(c) +
             rw.lambda_corr * energy::corr_reg(c, w);
    });
    CHECK(max_rel_err(fd, analytic) < 1e-5);
  }
  SUBCASE("zero weights give an exactly zero gradient") {
    const auto cube = lattice_cube(8, 6, 4, 59);
    energy::RegWeights rw{.lambda_tik = 0.0, .lambda_tv = 0.0, .lambda_corr = 0.0};
    const auto rep = energy::total_reg(cube, w, rw);
    for (double g : rep.gradient.data) CHECK(g == 0.0);
    CHECK(rep.r_total == 0.0);
    CHECK(rep.r_tik > 0.0);  // term values are still reported
  }
}

TEST_CASE("parameter validation") {
  energy::RegWeights rw;
  rw.lambda_tv = -0.1;
  CHECK_THROWS_AS(rw.validate(), ValidationError);
  rw = {};
  rw.tau = 0.0;
  CHECK_THROWS_AS(rw.validate(), ValidationError);
  rw = {};
  rw.eps_tv = 0.0;
  CHECK_THROWS_AS(rw.validate(), ValidationError);

  const auto cube = lattice_cube(2, 2, 2, 3);
  CHECK_THROWS_AS(energy::total_reg(cube, spectral::WeightMatrix::ones(2), {}),
                  ValidationError);
}
