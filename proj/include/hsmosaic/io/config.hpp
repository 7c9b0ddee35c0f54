#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "hsmosaic/energy/regularizers.hpp"
#include "hsmosaic/solver/solver.hpp"

namespace hsmosaic::io {

/// Everything the command-line tools read from a config file. Keys (one
/// `key = value` per line, `#` comments):
///   lambda_tik lambda_tv lambda_corr tau eps_var eps_tv     (energy)
///   max_iters step_size beta1 beta2 eps_opt stop_tol log_every  (solver)
///   peak                                                    (metric peak)
struct ToolConfig {
  energy::RegWeights reg;
  solver::SolverConfig solver;
  double peak = 1.0;

  void validate() const;
};

/// Parses `key = value` lines; unknown keys and malformed lines raise
/// FormatError naming the line number.
ToolConfig load_config(std::istream& in, const std::string& origin = "<stream>");
ToolConfig load_config(const std::filesystem::path& path);

}  // namespace hsmosaic::io
