#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hsmosaic/core/hypercube.hpp"
#include "hsmosaic/energy/regularizers.hpp"
#include "hsmosaic/error.hpp"
#include "hsmosaic/spectral/weights.hpp"

namespace hsmosaic::solver {

/// First-order descent settings. beta1/beta2 follow the adaptive-moment
/// scheme; step_size and max_iters are tuned for desk-scale cubes.
struct SolverConfig {
  int max_iters = 2000;
  double step_size = 1e-3;
  double beta1 = 0.5;
  double beta2 = 0.99;
  double eps = 1e-8;        // adaptive-moment denominator offset
  double stop_tol = 1e-6;   // mean per-iteration relative energy decrease
  int log_every = 10;       // trace cadence and stopping window

  void validate() const;
};

struct TraceRow {
  int iter = 0;
  double r_corr = 0.0;
  double r_tik = 0.0;
  double r_tv = 0.0;
  double r_total = 0.0;
};

struct SolveTrace {
  std::vector<TraceRow> rows;
  int iterations = 0;          // descent steps performed
  std::string stop_reason;     // "stationary" | "converged" | "max_iters"

  void write_csv(std::ostream& out) const;  // "iter,r_corr,r_tik,r_tv,r_total"
  void save_csv(const std::filesystem::path& path) const;
};

struct SolveResult {
  core::Hypercube cube;
  SolveTrace trace;
};

/// Raised when the energy or its gradient goes non-finite mid-descent.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, SolveTrace trace)
      : Error(what), trace(std::move(trace)) {}
  SolveTrace trace;
};

/// Minimizes the combined regularizer over cubes consistent with the
/// snapshot. Starts from the bilinear baseline; every iterate is projected
/// back onto the measurement constraint, so mosaic_apply(result) equals the
/// snapshot exactly. Returns the lowest-energy iterate visited.
SolveResult solve(const core::SnapshotMosaic& snapshot, const core::MsfaPattern& pattern,
                  const spectral::WeightMatrix& w, const energy::RegWeights& rw,
                  const SolverConfig& cfg);

}  // namespace hsmosaic::solver
