#include "hsmosaic/solver/solver.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "hsmosaic/core/mosaic.hpp"

namespace hsmosaic::solver {

namespace {

bool finite_report(const energy::EnergyReport& rep) {
  if (!std::isfinite(rep.r_total) || !std::isfinite(rep.r_corr) ||
      !std::isfinite(rep.r_tik) || !std::isfinite(rep.r_tv)) {
    return false;
  }
  return rep.gradient.all_finite();
}

bool all_zero(const core::Hypercube& g) {
  for (double v : g.data) {
    if (v != 0.0) return false;
  }
  return true;
}

}  // namespace

void SolverConfig::validate() const {
  if (max_iters < 0) throw ValidationError("max_iters must be >= 0");
  if (!(step_size > 0.0)) throw ValidationError("step_size must be > 0");
  if (beta1 < 0.0 || beta1 >= 1.0) throw ValidationError("beta1 must lie in [0, 1)");
  if (beta2 < 0.0 || beta2 >= 1.0) throw ValidationError("beta2 must lie in [0, 1)");
  if (!(eps > 0.0)) throw ValidationError("eps must be > 0");
  if (stop_tol < 0.0) throw ValidationError("stop_tol must be >= 0");
  if (log_every < 1) throw ValidationError("log_every must be >= 1");
}

void SolveTrace::write_csv(std::ostream& out) const {
  out << "iter,r_corr,r_tik,r_tv,r_total\n";
  out.precision(17);
  for (const auto& row : rows) {
    out << row.iter << ',' << row.r_corr << ',' << row.r_tik << ',' << row.r_tv << ','
        << row.r_total << '\n';
  }
}

void SolveTrace::save_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write trace CSV " + path.string());
  write_csv(out);
}

SolveResult solve(const core::SnapshotMosaic& snapshot, const core::MsfaPattern& pattern,
                  const spectral::WeightMatrix& w, const energy::RegWeights& rw,
                  const SolverConfig& cfg) {
  cfg.validate();
  rw.validate();

  core::Hypercube iterate = core::bilinear_demosaic(snapshot, pattern);
  core::override_apply_inplace(iterate, snapshot, pattern);

  SolveTrace trace;
  std::vector<double> m(iterate.size(), 0.0);
  std::vector<double> v(iterate.size(), 0.0);
  std::vector<double> energies;
  energies.reserve(cfg.max_iters + 1);

  core::Hypercube best = iterate;
  double best_energy = std::numeric_limits<double>::infinity();
  const int window = cfg.log_every;

  int iter = 0;
  while (true) {
    energy::EnergyReport rep = energy::total_reg(iterate, w, rw);
    if (!finite_report(rep)) {
      throw DivergenceError("energy or gradient non-finite at iteration " +
                                std::to_string(iter),
                            std::move(trace));
    }
    energies.push_back(rep.r_total);
    if (rep.r_total < best_energy) {
      best_energy = rep.r_total;
      best = iterate;
    }
    const bool logged = iter % cfg.log_every == 0;
    if (logged) {
      trace.rows.push_back({iter, rep.r_corr, rep.r_tik, rep.r_tv, rep.r_total});
    }

    auto finish = [&](const char* reason) {
      if (!logged) {
        trace.rows.push_back({iter, rep.r_corr, rep.r_tik, rep.r_tv, rep.r_total});
      }
      trace.iterations = iter;
      trace.stop_reason = reason;
    };

    if (all_zero(rep.gradient)) {
      finish("stationary");
      break;
    }
    if (iter >= window) {
      const double before = energies[iter - window];
      const double decrease = before - rep.r_total;
      const double rel = decrease / ((std::abs(before) + 1e-30) * window);
      if (rel < cfg.stop_tol) {
        finish("converged");
        break;
      }
    }
    if (iter >= cfg.max_iters) {
      finish("max_iters");
      break;
    }

    // Adaptive-moment step with bias correction, then project back onto the
    // measurement constraint.
    ++iter;
    const double bc1 = 1.0 - std::pow(cfg.beta1, iter);
    const double bc2 = 1.0 - std::pow(cfg.beta2, iter);
    const double* g = rep.gradient.data.data();
    for (std::size_t i = 0; i < iterate.size(); ++i) {
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g[i];
      v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
      const double m_hat = m[i] / bc1;
      const double v_hat = v[i] / bc2;
      iterate.data[i] -= cfg.step_size * m_hat / (std::sqrt(v_hat) + cfg.eps);
    }
    core::override_apply_inplace(iterate, snapshot, pattern);
  }

  return {std::move(best), std::move(trace)};
}

}  // namespace hsmosaic::solver
