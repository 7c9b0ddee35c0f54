// Command-line surface over the demosaicking toolkit. Every subcommand is a
// thin composition of library calls; data goes to stdout (or --out), status
// notes to stderr. Exit code 0 only on success.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hsmosaic/core/mosaic.hpp"
#include "hsmosaic/error.hpp"
#include "hsmosaic/io/config.hpp"
#include "hsmosaic/io/cube_file.hpp"
#include "hsmosaic/io/phantom.hpp"
#include "hsmosaic/io/rgb.hpp"
#include "hsmosaic/metrics/bradley_terry.hpp"
#include "hsmosaic/metrics/quality.hpp"
#include "hsmosaic/solver/solver.hpp"
#include "hsmosaic/spectral/weights.hpp"

namespace {

using namespace hsmosaic;

// One bag of option storage per subcommand that takes tuning flags. Flags
// beat the config file, the config file beats built-in defaults; only flags
// the user actually passed (count > 0) override.
struct TuningOpts {
  std::string config_path;
  double lambda_tik = 0, lambda_tv = 0, lambda_corr = 0, tau = 0;
  double eps_var = 0, eps_tv = 0;
  int max_iters = 0, log_every = 0;
  double step_size = 0, beta1 = 0, beta2 = 0, eps_opt = 0, stop_tol = 0;
  double peak = 0;
};

void add_config_flag(CLI::App* sub, TuningOpts& o) {
  sub->add_option("--config", o.config_path, "key = value config file")
      ->check(CLI::ExistingFile);
}

void add_tuning_flags(CLI::App* sub, TuningOpts& o) {
  add_config_flag(sub, o);
  sub->add_option("--lambda-tik", o.lambda_tik, "Tikhonov term weight");
  sub->add_option("--lambda-tv", o.lambda_tv, "total-variation term weight");
  sub->add_option("--lambda-corr", o.lambda_corr, "gradient-correlation term weight");
  sub->add_option("--tau", o.tau, "band-affinity temperature");
  sub->add_option("--eps-var", o.eps_var, "correlation variance floor");
  sub->add_option("--eps-tv", o.eps_tv, "TV smoothing constant");
  sub->add_option("--max-iters", o.max_iters, "descent iteration cap");
  sub->add_option("--step-size", o.step_size, "descent step size");
  sub->add_option("--beta1", o.beta1, "first-moment decay");
  sub->add_option("--beta2", o.beta2, "second-moment decay");
  sub->add_option("--eps-opt", o.eps_opt, "moment denominator offset");
  sub->add_option("--stop-tol", o.stop_tol, "relative-decrease stopping tolerance");
  sub->add_option("--log-every", o.log_every, "trace cadence / stopping window");
}

io::ToolConfig resolve_config(const CLI::App* sub, const TuningOpts& o) {
  io::ToolConfig cfg;
  if (!o.config_path.empty()) cfg = io::load_config(o.config_path);
  const auto hit = [&](const std::string& name) {
    const auto* opt = sub->get_option_no_throw(name);
    return opt && opt->count() > 0;
  };
  if (hit("--lambda-tik")) cfg.reg.lambda_tik = o.lambda_tik;
  if (hit("--lambda-tv")) cfg.reg.lambda_tv = o.lambda_tv;
  if (hit("--lambda-corr")) cfg.reg.lambda_corr = o.lambda_corr;
  if (hit("--tau")) cfg.reg.tau = o.tau;
  if (hit("--eps-var")) cfg.reg.eps_var = o.eps_var;
  if (hit("--eps-tv")) cfg.reg.eps_tv = o.eps_tv;
  if (hit("--max-iters")) cfg.solver.max_iters = o.max_iters;
  if (hit("--step-size")) cfg.solver.step_size = o.step_size;
  if (hit("--beta1")) cfg.solver.beta1 = o.beta1;
  if (hit("--beta2")) cfg.solver.beta2 = o.beta2;
  if (hit("--eps-opt")) cfg.solver.eps = o.eps_opt;
  if (hit("--stop-tol")) cfg.solver.stop_tol = o.stop_tol;
  if (hit("--log-every")) cfg.solver.log_every = o.log_every;
  if (hit("--peak")) cfg.peak = o.peak;
  cfg.validate();
  return cfg;
}

core::MsfaPattern pattern_or_default(const std::string& path) {
  return path.empty() ? core::MsfaPattern::default_4x4() : core::load_pattern(path);
}

spectral::SpectralResponseSet responses_or_default(const std::string& path, int bands) {
  if (path.empty()) return spectral::SpectralResponseSet::gaussian_bands(bands);
  auto responses = spectral::SpectralResponseSet::load_csv(std::filesystem::path{path});
  if (responses.bands() != bands) {
    throw ValidationError("response CSV has " + std::to_string(responses.bands()) +
                          " bands but the pattern measures " + std::to_string(bands));
  }
  return responses;
}

solver::SolveResult run_solve(const core::SnapshotMosaic& snapshot,
                              const core::MsfaPattern& pattern,
                              const std::string& responses_path, const io::ToolConfig& cfg) {
  const auto responses = responses_or_default(responses_path, pattern.bands);
  const auto w = spectral::weight_matrix(responses, cfg.reg.tau);
  return solver::solve(snapshot, pattern, w, cfg.reg, cfg.solver);
}

void cmd_phantom(CLI::App& app) {
  auto* sub = app.add_subcommand("phantom", "generate a synthetic ground-truth cube");
  struct Opts {
    std::string out, kind = "edges";
    io::PhantomSpec spec;
    TuningOpts tuning;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--out", o->out, "output cube path")->required();
  sub->add_option("--kind", o->kind, "flat|gradient-ramp|edges|blobs");
  sub->add_option("--width", o->spec.width, "cube width");
  sub->add_option("--height", o->spec.height, "cube height");
  sub->add_option("--bands", o->spec.bands, "band count");
  sub->add_option("--seed", o->spec.seed, "RNG seed");
  sub->add_option("--noise", o->spec.noise_sigma, "additive Gaussian sigma");
  sub->add_option("--features", o->spec.features, "line/blob count");
  sub->add_option("--flat-value", o->spec.flat_value, "value of the flat kind");
  sub->add_option("--period", o->spec.mosaic_period, "mosaic period the dims must divide by");
  add_config_flag(sub, o->tuning);
  sub->callback([o] {
    if (!o->tuning.config_path.empty()) io::load_config(o->tuning.config_path);
    o->spec.kind = io::parse_phantom_kind(o->kind);
    io::save_cube(io::gen_phantom(o->spec), o->out);
    std::cerr << "wrote " << o->spec.width << "x" << o->spec.height << "x" << o->spec.bands
              << " " << o->kind << " phantom to " << o->out << "\n";
  });
}

void cmd_mosaic(CLI::App& app) {
  auto* sub = app.add_subcommand("mosaic", "apply the MSFA selection operator to a cube");
  struct Opts {
    std::string in, out, pattern;
    TuningOpts tuning;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--in", o->in, "input cube")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", o->out, "output snapshot mosaic")->required();
  sub->add_option("--pattern", o->pattern, "pattern text file (default 4x4/16)");
  add_config_flag(sub, o->tuning);
  sub->callback([o] {
    if (!o->tuning.config_path.empty()) io::load_config(o->tuning.config_path);
    const auto cube = io::load_cube(o->in);
    const auto pattern = pattern_or_default(o->pattern);
    io::save_mosaic(core::mosaic_apply(cube, pattern), o->out);
    std::cerr << "wrote snapshot mosaic to " << o->out << "\n";
  });
}

void cmd_demosaic(CLI::App& app) {
  auto* sub = app.add_subcommand("demosaic", "reconstruct a cube from a snapshot mosaic");
  struct Opts {
    std::string in, out, pattern, responses, method = "var", trace;
    TuningOpts tuning;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--in", o->in, "input snapshot mosaic")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", o->out, "output cube")->required();
  sub->add_option("--method", o->method, "linear (baseline) or var (variational)")
      ->check(CLI::IsMember({"linear", "var"}));
  sub->add_option("--pattern", o->pattern, "pattern text file (default 4x4/16)");
  sub->add_option("--responses", o->responses, "band response CSV (default synthetic)");
  sub->add_option("--trace", o->trace, "also write the energy trace CSV here");
  add_tuning_flags(sub, o->tuning);
  sub->callback([o, sub = sub] {
    const auto cfg = resolve_config(sub, o->tuning);
    const auto snapshot = io::load_mosaic(o->in);
    const auto pattern = pattern_or_default(o->pattern);
    if (o->method == "linear") {
      io::save_cube(core::bilinear_demosaic(snapshot, pattern), o->out);
      std::cerr << "wrote bilinear reconstruction to " << o->out << "\n";
      return;
    }
    const auto result = run_solve(snapshot, pattern, o->responses, cfg);
    io::save_cube(result.cube, o->out);
    if (!o->trace.empty()) result.trace.save_csv(o->trace);
    std::cerr << "solved in " << result.trace.iterations << " iterations ("
              << result.trace.stop_reason << "); wrote " << o->out << "\n";
  });
}

void cmd_trace_export(CLI::App& app) {
  auto* sub = app.add_subcommand(
      "trace-export", "run the variational solver and export its energy trace");
  struct Opts {
    std::string in, out, cube, pattern, responses;
    TuningOpts tuning;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--in", o->in, "input snapshot mosaic")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", o->out, "energy trace CSV path")->required();
  sub->add_option("--cube", o->cube, "optionally also write the solved cube");
  sub->add_option("--pattern", o->pattern, "pattern text file (default 4x4/16)");
  sub->add_option("--responses", o->responses, "band response CSV (default synthetic)");
  add_tuning_flags(sub, o->tuning);
  sub->callback([o, sub = sub] {
    const auto cfg = resolve_config(sub, o->tuning);
    const auto snapshot = io::load_mosaic(o->in);
    const auto pattern = pattern_or_default(o->pattern);
    const auto result = run_solve(snapshot, pattern, o->responses, cfg);
    result.trace.save_csv(o->out);
    if (!o->cube.empty()) io::save_cube(result.cube, o->cube);
    std::cerr << "solved in " << result.trace.iterations << " iterations ("
              << result.trace.stop_reason << "); wrote " << o->out << "\n";
  });
}

void cmd_weights(CLI::App& app) {
  auto* sub = app.add_subcommand("weights", "emit the Wasserstein band-affinity matrix as CSV");
  struct Opts {
    std::string out = "-", responses;
    int bands = 16;
    TuningOpts tuning;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--out", o->out, "output CSV path, or - for stdout");
  sub->add_option("--bands", o->bands, "band count for the synthetic responses");
  sub->add_option("--responses", o->responses, "band response CSV (default synthetic)");
  add_config_flag(sub, o->tuning);
  sub->add_option("--tau", o->tuning.tau, "band-affinity temperature");
  sub->callback([o, sub = sub] {
    io::ToolConfig cfg;
    if (!o->tuning.config_path.empty()) cfg = io::load_config(o->tuning.config_path);
    if (sub->count("--tau")) cfg.reg.tau = o->tuning.tau;
    const auto responses = responses_or_default(o->responses, o->bands);
    const auto w = spectral::weight_matrix(responses, cfg.reg.tau);
    if (o->out == "-") {
      w.save_csv(std::cout);
    } else {
      w.save_csv(std::filesystem::path{o->out});
      std::cerr << "wrote " << w.bands << "x" << w.bands << " weight matrix to " << o->out
                << "\n";
    }
  });
}

void cmd_eval(CLI::App& app) {
  auto* sub = app.add_subcommand("eval", "compare cubes against a reference cube");
  struct Opts {
    std::string ref, out = "-";
    std::vector<std::string> tests;
    TuningOpts tuning;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--ref", o->ref, "reference cube")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", o->out, "output CSV path, or - for stdout");
  sub->add_option("--peak", o->tuning.peak, "peak signal value for PSNR/SSIM");
  sub->add_option("tests", o->tests, "cubes to evaluate")
      ->required()
      ->check(CLI::ExistingFile);
  add_config_flag(sub, o->tuning);
  sub->callback([o, sub = sub] {
    const auto cfg = resolve_config(sub, o->tuning);
    const auto ref = io::load_cube(o->ref);
    std::ostringstream csv;
    csv << "image,ssim,psnr_db,sam_rad\n" << std::setprecision(17);
    for (const auto& path : o->tests) {
      const auto report = metrics::evaluate_all(io::load_cube(path), ref, cfg.peak);
      csv << path << ',' << report.ssim << ',' << report.psnr_db << ',' << report.sam_rad
          << '\n';
    }
    if (o->out == "-") {
      std::cout << csv.str();
    } else {
      std::ofstream out(o->out);
      if (!out) throw FormatError("cannot open '" + o->out + "' for writing");
      out << csv.str();
      std::cerr << "wrote metrics for " << o->tests.size() << " cube(s) to " << o->out << "\n";
    }
  });
}

void cmd_rank(CLI::App& app) {
  auto* sub = app.add_subcommand("rank", "fit a Bradley-Terry preference scale to a vote table");
  struct Opts {
    std::string votes;
    TuningOpts tuning;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("votes", o->votes, "vote-table text file")->required()->check(CLI::ExistingFile);
  add_config_flag(sub, o->tuning);
  sub->callback([o] {
    if (!o->tuning.config_path.empty()) io::load_config(o->tuning.config_path);
    const auto table = metrics::VoteTable::load(std::filesystem::path{o->votes});
    const auto scale = metrics::fit_bradley_terry(table);
    std::cout << "method,pi\n" << std::setprecision(17);
    for (std::size_t i = 0; i < scale.pi.size(); ++i) {
      std::cout << i << ',' << scale.pi[i] << '\n';
    }
    std::cerr << (scale.converged ? "converged" : "iteration cap reached") << " after "
              << scale.iterations << " sweeps\n";
  });
}

void cmd_rgb(CLI::App& app) {
  auto* sub = app.add_subcommand("rgb", "export a qualitative pseudo-color preview (PPM)");
  struct Opts {
    std::string in, out;
    double gamma = 2.2;
    TuningOpts tuning;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--in", o->in, "input cube")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", o->out, "output PPM path")->required();
  sub->add_option("--gamma", o->gamma, "display gamma");
  add_config_flag(sub, o->tuning);
  sub->callback([o] {
    if (!o->tuning.config_path.empty()) io::load_config(o->tuning.config_path);
    const auto cube = io::load_cube(o->in);
    auto proj = io::RgbProjection::gaussian_default(cube.bands);
    proj.gamma = o->gamma;
    io::to_rgb(cube, proj, o->out);
    std::cerr << "wrote " << cube.width << "x" << cube.height << " preview to " << o->out
              << "\n";
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"snapshot-mosaic hyperspectral demosaicking toolkit"};
  app.require_subcommand(1);
  cmd_phantom(app);
  cmd_mosaic(app);
  cmd_demosaic(app);
  cmd_trace_export(app);
  cmd_weights(app);
  cmd_eval(app);
  cmd_rank(app);
  cmd_rgb(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
