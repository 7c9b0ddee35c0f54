#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hsmosaic/core/mosaic.hpp"
#include "hsmosaic/error.hpp"
#include "hsmosaic/io/config.hpp"
#include "hsmosaic/io/cube_file.hpp"
#include "hsmosaic/io/phantom.hpp"
#include "hsmosaic/io/rgb.hpp"
#include "hsmosaic/spectral/weights.hpp"
#include "test_support.hpp"

using namespace hsmosaic;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<int> counter{0};
    path = fs::temp_directory_path() /
           ("hsmosaic-test-" + std::to_string(counter.fetch_add(1)) + "-" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_bytes(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

// Expects `fn` to throw E whose message contains `needle`.
template <typename E, typename Fn>
void check_throws_containing(Fn&& fn, const std::string& needle) {
  try {
    fn();
    FAIL_CHECK("expected an exception mentioning '" << needle << "'");
  } catch (const E& e) {
    CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos,
                  "message was: " << e.what());
  }
}

}  // namespace

TEST_CASE("cube files round-trip through float quantization") {
  TempDir dir;
  const auto cube = testsupport::random_cube(7, 5, 3, 42);
  const fs::path a = dir.path / "a.hsc";
  io::save_cube(cube, a);

  const auto back = io::load_cube(a);
  REQUIRE(back.width == 7);
  REQUIRE(back.height == 5);
  REQUIRE(back.bands == 3);
  CHECK(back.value_lo == cube.value_lo);
  CHECK(back.value_hi == cube.value_hi);
  for (std::size_t i = 0; i < cube.size(); ++i) {
    CHECK(back.data[i] == static_cast<double>(static_cast<float>(cube.data[i])));
  }

  // A file that came out of save_cube reproduces itself byte for byte.
  const fs::path b = dir.path / "b.hsc";
  io::save_cube(back, b);
  CHECK(read_bytes(a) == read_bytes(b));
}

TEST_CASE("save_cube rejects values a 32-bit float cannot carry") {
  TempDir dir;
  core::Hypercube cube(2, 2, 1, 0.5);
  cube.data[1] = 1e300;
  check_throws_containing<FormatError>(
      [&] { io::save_cube(cube, dir.path / "x.hsc"); }, "does not fit");
  cube.data[1] = std::nan("");
  CHECK_THROWS_AS(io::save_cube(cube, dir.path / "x.hsc"), FormatError);
}

TEST_CASE("load_cube rejects corrupt containers with located errors") {
  TempDir dir;
  const fs::path good = dir.path / "good.hsc";
  io::save_cube(testsupport::random_cube(4, 3, 2, 7), good);
  const std::string bytes = read_bytes(good);
  const fs::path bad = dir.path / "bad.hsc";

  SUBCASE("missing file") {
    check_throws_containing<FormatError>(
        [&] { io::load_cube(dir.path / "absent.hsc"); }, "cannot open");
  }
  SUBCASE("bad magic") {
    std::string t = bytes;
    t[0] = 'J';
    write_bytes(bad, t);
    check_throws_containing<FormatError>([&] { io::load_cube(bad); }, "bad magic");
  }
  SUBCASE("missing header line") {
    write_bytes(bad, "HSC1\n");
    check_throws_containing<FormatError>([&] { io::load_cube(bad); }, "missing header");
  }
  SUBCASE("unparseable header") {
    write_bytes(bad, "HSC1\nfour 3 2 0 1\n");
    check_throws_containing<FormatError>([&] { io::load_cube(bad); }, "does not parse");
  }
  SUBCASE("trailing header tokens") {
    write_bytes(bad, "HSC1\n4 3 2 0 1 junk\n");
    check_throws_containing<FormatError>([&] { io::load_cube(bad); }, "trailing");
  }
  SUBCASE("non-positive dimensions") {
    write_bytes(bad, "HSC1\n0 3 2 0 1\n");
    check_throws_containing<FormatError>([&] { io::load_cube(bad); }, "non-positive");
  }
  SUBCASE("truncated payload reports byte counts") {
    // Header is 15 bytes ("HSC1\n" + "4 3 2 0 1\n"); keep 50 of 96 payload bytes.
    write_bytes(bad, bytes.substr(0, 15 + 50));
    check_throws_containing<FormatError>([&] { io::load_cube(bad); },
                                         "expected 96 bytes, got 50");
    check_throws_containing<FormatError>([&] { io::load_cube(bad); }, "byte offset 15");
  }
  SUBCASE("payload longer than promised") {
    write_bytes(bad, bytes + std::string(4, '\0'));
    check_throws_containing<FormatError>([&] { io::load_cube(bad); }, "longer than");
  }
  SUBCASE("non-finite voxel named with its offset") {
    std::string t = bytes;
    // Second voxel (offset 15 + 4) becomes a quiet NaN, little endian.
    t[19] = '\x00';
    t[20] = '\x00';
    t[21] = '\xc0';
    t[22] = '\x7f';
    write_bytes(bad, t);
    check_throws_containing<FormatError>([&] { io::load_cube(bad); }, "non-finite value at voxel 1");
    check_throws_containing<FormatError>([&] { io::load_cube(bad); }, "byte offset 19");
  }
}

TEST_CASE("mosaic containers are single-band cubes") {
  TempDir dir;
  core::SnapshotMosaic snap(6, 4);
  for (std::size_t i = 0; i < snap.data.size(); ++i) snap.data[i] = 0.25 + 0.5 * (i % 3);
  const fs::path p = dir.path / "m.hsc";
  io::save_mosaic(snap, p);
  const auto back = io::load_mosaic(p);
  REQUIRE(back.width == 6);
  REQUIRE(back.height == 4);
  CHECK(back.data == snap.data);  // all values here are float-exact

  io::save_cube(core::Hypercube(3, 3, 2, 0.5), dir.path / "c.hsc");
  check_throws_containing<FormatError>(
      [&] { io::load_mosaic(dir.path / "c.hsc"); }, "single-band");
}

TEST_CASE("phantom generation is a deterministic function of PhantomSpec") {
  io::PhantomSpec spec;
  spec.width = 16;
  spec.height = 12;
  spec.bands = 5;
  spec.kind = io::PhantomKind::kBlobs;
  spec.seed = 1234;
  spec.noise_sigma = 0.05;
  spec.mosaic_period = 4;
  const auto a = io::gen_phantom(spec);
  const auto b = io::gen_phantom(spec);
  CHECK(a.data == b.data);

  spec.seed = 1235;
  const auto c = io::gen_phantom(spec);
  CHECK(a.data != c.data);
}

TEST_CASE("flat phantoms are constant; every kind stays inside [0, 1]") {
  io::PhantomSpec spec;
  spec.width = 12;
  spec.height = 8;
  spec.bands = 4;
  spec.mosaic_period = 4;
  spec.kind = io::PhantomKind::kFlat;
  spec.flat_value = 0.37;
  const auto flat = io::gen_phantom(spec);
  for (const double v : flat.data) CHECK(v == 0.37);

  for (const auto kind : {io::PhantomKind::kGradientRamp, io::PhantomKind::kEdges,
                          io::PhantomKind::kBlobs}) {
    spec.kind = kind;
    spec.seed = 9;
    spec.noise_sigma = 0.1;
    const auto cube = io::gen_phantom(spec);
    double lo = 1e9, hi = -1e9;
    for (const double v : cube.data) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(lo >= 0.0);
    CHECK(hi <= 1.0);
    CHECK(hi > lo);  // not degenerate
  }
}

TEST_CASE("ramp phantoms are spatially affine per band") {
  io::PhantomSpec spec;
  spec.width = 16;
  spec.height = 16;
  spec.bands = 3;
  spec.kind = io::PhantomKind::kGradientRamp;
  spec.seed = 5;
  const auto cube = io::gen_phantom(spec);
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < 16; ++y) {
      for (int x = 0; x + 2 < 16; ++x) {
        const double second = cube.at(x + 2, y, c) - 2 * cube.at(x + 1, y, c) + cube.at(x, y, c);
        CHECK(std::abs(second) < 1e-12);
      }
    }
    for (int y = 0; y + 2 < 16; ++y) {
      for (int x = 0; x < 16; ++x) {
        const double second = cube.at(x, y + 2, c) - 2 * cube.at(x, y + 1, c) + cube.at(x, y, c);
        CHECK(std::abs(second) < 1e-12);
      }
    }
  }
}

TEST_CASE("edge phantoms put their discontinuities in the same place in every band") {
  io::PhantomSpec spec;
  spec.width = 16;
  spec.height = 16;
  spec.bands = 6;
  spec.kind = io::PhantomKind::kEdges;
  spec.seed = 77;
  spec.features = 2;
  const auto cube = io::gen_phantom(spec);

  // Within a band the forward differences are (a_i - a_j) * profile(c): one
  // spatial edge field scaled per band. Check proportionality against band 0.
  const auto diff_x = [&](int x, int y, int c) { return cube.at(x + 1, y, c) - cube.at(x, y, c); };
  int anchor_x = -1, anchor_y = -1;
  for (int y = 0; y < 16 && anchor_x < 0; ++y) {
    for (int x = 0; x + 1 < 16 && anchor_x < 0; ++x) {
      if (std::abs(diff_x(x, y, 0)) > 1e-9) {
        anchor_x = x;
        anchor_y = y;
      }
    }
  }
  REQUIRE(anchor_x >= 0);  // the cutting lines must cross the grid
  for (int c = 1; c < 6; ++c) {
    const double ratio = diff_x(anchor_x, anchor_y, c) / diff_x(anchor_x, anchor_y, 0);
    CHECK(ratio > 0.0);
    for (int y = 0; y < 16; ++y) {
      for (int x = 0; x + 1 < 16; ++x) {
        CHECK(std::abs(diff_x(x, y, c) - ratio * diff_x(x, y, 0)) < 1e-9);
      }
    }
  }
}

TEST_CASE("phantom noise is additive, clamped, and seed-stable") {
  io::PhantomSpec spec;
  spec.width = 16;
  spec.height = 16;
  spec.bands = 4;
  spec.kind = io::PhantomKind::kFlat;
  spec.flat_value = 0.5;
  spec.noise_sigma = 0.2;
  spec.seed = 3;
  const auto noisy = io::gen_phantom(spec);
  double mean = 0.0;
  int distinct = 0;
  for (const double v : noisy.data) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    mean += v;
    if (v != 0.5) ++distinct;
  }
  mean /= static_cast<double>(noisy.size());
  CHECK(std::abs(mean - 0.5) < 0.05);
  CHECK(distinct > static_cast<int>(noisy.size()) / 2);
}

TEST_CASE("phantom spec validation") {
  io::PhantomSpec spec;
  spec.width = 15;  // not divisible by period 4
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec.width = 16;
  spec.noise_sigma = -0.1;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec.noise_sigma = 0.0;
  spec.features = 0;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec.features = 13;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec.features = 3;
  spec.flat_value = 1.5;
  CHECK_THROWS_AS(spec.validate(), ValidationError);

  CHECK(io::parse_phantom_kind("ramp") == io::PhantomKind::kGradientRamp);
  CHECK(io::parse_phantom_kind("gradient-ramp") == io::PhantomKind::kGradientRamp);
  CHECK(io::phantom_kind_name(io::PhantomKind::kBlobs) == "blobs");
  CHECK(io::parse_phantom_kind(io::phantom_kind_name(io::PhantomKind::kEdges)) ==
        io::PhantomKind::kEdges);
  CHECK_THROWS_AS(io::parse_phantom_kind("bogus"), ValidationError);
}

TEST_CASE("rgb projection") {
  SUBCASE("zero cube maps to black, constant cube to neutral gray") {
    const auto proj = io::RgbProjection::gaussian_default(4);
    const auto black = io::project_rgb(core::Hypercube(3, 2, 4, 0.0), proj);
    REQUIRE(black.size() == 3u * 2u * 3u);
    for (const auto b : black) CHECK(b == 0);

    const auto gray = io::project_rgb(core::Hypercube(3, 2, 4, 0.25), proj);
    const auto expected = static_cast<std::uint8_t>(
        std::lround(255.0 * std::pow(0.25, 1.0 / proj.gamma)));
    for (const auto b : gray) CHECK(b == expected);
  }
  SUBCASE("one-hot responses isolate a channel") {
    io::RgbProjection proj;
    proj.bands = 2;
    proj.rows = {std::vector<double>{1.0, 0.0}, std::vector<double>{0.0, 1.0},
                 std::vector<double>{0.0, 1.0}};
    core::Hypercube cube(2, 1, 2, 0.0);
    cube.at(0, 0, 0) = 1.0;
    cube.at(1, 0, 0) = 1.0;
    const auto rgb = io::project_rgb(cube, proj);
    REQUIRE(rgb.size() == 6);
    CHECK(rgb[0] == 255);
    CHECK(rgb[1] == 0);
    CHECK(rgb[2] == 0);
  }
  SUBCASE("matches the direct per-pixel computation") {
    const auto cube = testsupport::random_cube(5, 4, 6, 31);
    const auto proj = io::RgbProjection::gaussian_default(6);
    const auto rgb = io::project_rgb(cube, proj);
    for (int y = 0; y < 4; ++y) {
      for (int x = 0; x < 5; ++x) {
        for (int ch = 0; ch < 3; ++ch) {
          double lin = 0.0;
          for (int c = 0; c < 6; ++c) lin += proj.rows[ch][c] * cube.at(x, y, c);
          lin = std::clamp(lin, 0.0, 1.0);
          const long expected = std::lround(255.0 * std::pow(lin, 1.0 / proj.gamma));
          const int got = rgb[static_cast<std::size_t>((y * 5 + x) * 3 + ch)];
          CHECK(std::abs(got - expected) <= 1);
        }
      }
    }
  }
  SUBCASE("band mismatch and bad projections are rejected") {
    CHECK_THROWS_AS(io::project_rgb(core::Hypercube(2, 2, 2, 0.1),
                                    io::RgbProjection::gaussian_default(3)),
                    ValidationError);
    io::RgbProjection bad = io::RgbProjection::gaussian_default(2);
    bad.rows[1][0] = -0.5;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = io::RgbProjection::gaussian_default(2);
    bad.gamma = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
  }
  SUBCASE("default rows are normalized") {
    const auto proj = io::RgbProjection::gaussian_default(8);
    proj.validate();
    for (const auto& row : proj.rows) {
      REQUIRE(row.size() == 8);
      double sum = 0.0;
      for (const double v : row) sum += v;
      CHECK(std::abs(sum - 1.0) < 1e-12);
    }
  }
  SUBCASE("ppm container") {
    TempDir dir;
    const fs::path p = dir.path / "img.ppm";
    io::to_rgb(core::Hypercube(5, 3, 2, 0.5), io::RgbProjection::gaussian_default(2), p);
    const std::string bytes = read_bytes(p);
    const std::string header = "P6\n5 3\n255\n";
    REQUIRE(bytes.size() == header.size() + 5u * 3u * 3u);
    CHECK(bytes.substr(0, header.size()) == header);
  }
}

TEST_CASE("config files") {
  SUBCASE("empty input keeps every default") {
    std::istringstream in("");
    const auto cfg = io::load_config(in, "mem");
    const energy::RegWeights reg;
    const solver::SolverConfig sol;
    CHECK(cfg.reg.lambda_tik == reg.lambda_tik);
    CHECK(cfg.reg.lambda_tv == reg.lambda_tv);
    CHECK(cfg.reg.lambda_corr == reg.lambda_corr);
    CHECK(cfg.reg.tau == reg.tau);
    CHECK(cfg.reg.eps_var == reg.eps_var);
    CHECK(cfg.reg.eps_tv == reg.eps_tv);
    CHECK(cfg.solver.max_iters == sol.max_iters);
    CHECK(cfg.solver.step_size == sol.step_size);
    CHECK(cfg.solver.beta1 == sol.beta1);
    CHECK(cfg.solver.beta2 == sol.beta2);
    CHECK(cfg.solver.eps == sol.eps);
    CHECK(cfg.solver.stop_tol == sol.stop_tol);
    CHECK(cfg.solver.log_every == sol.log_every);
    CHECK(cfg.peak == 1.0);
  }
  SUBCASE("every key is settable; comments and spacing are free-form") {
    std::istringstream in(
        "# full-line comment\n"
        "lambda_tik = 2.5\n"
        "  lambda_tv=0.75   # inline comment\n"
        "lambda_corr = 0.125\n"
        "tau = 0.3\n"
        "eps_var = 1e-10\n"
        "eps_tv = 1e-5\n"
        "\n"
        "max_iters = 123\n"
        "step_size = 0.002\n"
        "beta1 = 0.6\n"
        "beta2 = 0.995\n"
        "eps_opt = 1e-9\n"
        "stop_tol = 1e-7\n"
        "log_every = 25\n"
        "peak = 2.0\n");
    const auto cfg = io::load_config(in, "mem");
    CHECK(cfg.reg.lambda_tik == 2.5);
    CHECK(cfg.reg.lambda_tv == 0.75);
    CHECK(cfg.reg.lambda_corr == 0.125);
    CHECK(cfg.reg.tau == 0.3);
    CHECK(cfg.reg.eps_var == 1e-10);
    CHECK(cfg.reg.eps_tv == 1e-5);
    CHECK(cfg.solver.max_iters == 123);
    CHECK(cfg.solver.step_size == 0.002);
    CHECK(cfg.solver.beta1 == 0.6);
    CHECK(cfg.solver.beta2 == 0.995);
    CHECK(cfg.solver.eps == 1e-9);
    CHECK(cfg.solver.stop_tol == 1e-7);
    CHECK(cfg.solver.log_every == 25);
    CHECK(cfg.peak == 2.0);
  }
  SUBCASE("errors carry the origin and line number") {
    std::istringstream unknown("tau = 0.2\nbogus = 1\n");
    check_throws_containing<FormatError>([&] { io::load_config(unknown, "cfg"); },
                                         "cfg:2: unknown key 'bogus'");
    std::istringstream noeq("lambda_tik 2\n");
    check_throws_containing<FormatError>([&] { io::load_config(noeq, "cfg"); },
                                         "cfg:1: expected 'key = value'");
    std::istringstream junk("tau = 0.1x\n");
    check_throws_containing<FormatError>([&] { io::load_config(junk, "cfg"); },
                                         "expected a number");
    std::istringstream novalue("tau =\n");
    check_throws_containing<FormatError>([&] { io::load_config(novalue, "cfg"); },
                                         "missing value");
    std::istringstream intjunk("max_iters = 1.5\n");
    check_throws_containing<FormatError>([&] { io::load_config(intjunk, "cfg"); },
                                         "expected an integer");
  }
  SUBCASE("semantic validation still applies") {
    std::istringstream bad("lambda_tik = -1\n");
    CHECK_THROWS_AS(io::load_config(bad, "cfg"), ValidationError);
    std::istringstream badpeak("peak = 0\n");
    CHECK_THROWS_AS(io::load_config(badpeak, "cfg"), ValidationError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(io::load_config(fs::path{"/nonexistent/x.cfg"}), FormatError);
  }
}

#ifdef HSMOSAIC_CLI_PATH

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HSMOSAIC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  return std::system(cmd.c_str());
}

std::vector<std::vector<double>> read_weight_csv(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(bool(in));
  std::string line;
  REQUIRE(std::getline(in, line));  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("cli: flags beat the config file, the config file beats defaults") {
  TempDir dir;
  const fs::path cfg = dir.path / "t.cfg";
  write_bytes(cfg, "tau = 0.2\n");
  const auto expect = [&](double tau) {
    return spectral::weight_matrix(spectral::SpectralResponseSet::gaussian_bands(4), tau);
  };
  const auto check_matches = [&](const fs::path& csv, const spectral::WeightMatrix& want) {
    const auto rows = read_weight_csv(csv);
    REQUIRE(rows.size() == 4);
    for (int i = 0; i < 4; ++i) {
      REQUIRE(rows[i].size() == 4);
      for (int j = 0; j < 4; ++j) CHECK(std::abs(rows[i][j] - want.at(i, j)) < 1e-15);
    }
  };

  const fs::path flag_csv = dir.path / "flag.csv";
  REQUIRE(run_cli("weights --bands 4 --out " + flag_csv.string() + " --config " +
                  cfg.string() + " --tau 0.05") == 0);
  check_matches(flag_csv, expect(0.05));

  const fs::path cfg_csv = dir.path / "cfg.csv";
  REQUIRE(run_cli("weights --bands 4 --out " + cfg_csv.string() + " --config " +
                  cfg.string()) == 0);
  check_matches(cfg_csv, expect(0.2));

  const fs::path def_csv = dir.path / "def.csv";
  REQUIRE(run_cli("weights --bands 4 --out " + def_csv.string()) == 0);
  check_matches(def_csv, expect(energy::RegWeights{}.tau));
}

TEST_CASE("cli: phantom -> mosaic -> demosaic -> eval -> rgb pipeline") {
  TempDir dir;
  const fs::path pat = dir.path / "pat.txt";
  write_bytes(pat, "2 4\n0 1\n2 3\n");
  const fs::path truth = dir.path / "truth.hsc";
  const fs::path snap = dir.path / "snap.hsc";
  const fs::path lin = dir.path / "lin.hsc";
  const fs::path var = dir.path / "var.hsc";
  const fs::path trace = dir.path / "trace.csv";
  const fs::path metrics_csv = dir.path / "metrics.csv";
  const fs::path ppm = dir.path / "preview.ppm";

  REQUIRE(run_cli("phantom --out " + truth.string() +
                  " --kind edges --width 16 --height 16 --bands 4 --period 2 --seed 11") == 0);
  REQUIRE(run_cli("mosaic --in " + truth.string() + " --out " + snap.string() +
                  " --pattern " + pat.string()) == 0);
  REQUIRE(run_cli("demosaic --in " + snap.string() + " --out " + lin.string() +
                  " --pattern " + pat.string() + " --method linear") == 0);
  REQUIRE(run_cli("demosaic --in " + snap.string() + " --out " + var.string() +
                  " --pattern " + pat.string() + " --max-iters 40 --trace " + trace.string()) ==
          0);
  REQUIRE(run_cli("eval --ref " + truth.string() + " --out " + metrics_csv.string() + " " +
                  lin.string() + " " + var.string()) == 0);
  REQUIRE(run_cli("rgb --in " + var.string() + " --out " + ppm.string()) == 0);

  const auto cube = io::load_cube(var);
  CHECK(cube.width == 16);
  CHECK(cube.bands == 4);

  // The solved cube still reproduces the snapshot exactly (both files carry
  // the same float-quantized values).
  const auto pattern = core::load_pattern(pat);
  const auto measured = core::mosaic_apply(cube, pattern);
  const auto snapshot = io::load_mosaic(snap);
  CHECK(measured.data == snapshot.data);

  std::ifstream tr(trace);
  std::string line;
  REQUIRE(std::getline(tr, line));
  CHECK(line == "iter,r_corr,r_tik,r_tv,r_total");

  std::ifstream mc(metrics_csv);
  REQUIRE(std::getline(mc, line));
  CHECK(line == "image,ssim,psnr_db,sam_rad");
  int rows = 0;
  while (std::getline(mc, line)) ++rows;
  CHECK(rows == 2);
}

TEST_CASE("cli: failures exit nonzero") {
  TempDir dir;
  CHECK(run_cli("demosaic --in " + (dir.path / "absent.hsc").string() + " --out " +
                (dir.path / "o.hsc").string()) != 0);
  CHECK(run_cli("weights --bands 4 --tau -1 --out " + (dir.path / "w.csv").string()) != 0);
  CHECK(run_cli("") != 0);  // a subcommand is required
}

#endif  // HSMOSAIC_CLI_PATH
