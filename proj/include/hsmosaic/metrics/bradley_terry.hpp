#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hsmosaic::metrics {

/// Pairwise-comparison outcomes: wins[i][j] votes preferred method i over j.
struct VoteTable {
  int methods = 0;
  std::vector<long long> wins;  // methods * methods, zero diagonal

  long long at(int i, int j) const { return wins[static_cast<std::size_t>(i) * methods + j]; }
  long long& at(int i, int j) { return wins[static_cast<std::size_t>(i) * methods + j]; }

  void validate() const;

  /// Text format: first line "k", then k rows of k integers.
  static VoteTable load(std::istream& in, const std::string& origin = "<stream>");
  static VoteTable load(const std::filesystem::path& path);
};

struct PreferenceScale {
  std::vector<double> pi;  // non-negative, sums to 1
  int iterations = 0;
  bool converged = false;
  std::vector<double> loglik_history;  // one entry per MM sweep
};

/// Bradley-Terry log-likelihood of a (not necessarily normalized) scale.
double bt_log_likelihood(const VoteTable& votes, std::span<const double> pi);

/// Maximum-likelihood preference scale via the minorization-maximization
/// fixed point pi_i <- W_i / sum_{j != i} n_ij/(pi_i + pi_j), normalized each
/// sweep; converged when max |delta pi| < tol. Requires a connected
/// comparison graph and at least one win per method.
PreferenceScale fit_bradley_terry(const VoteTable& votes, int max_iters = 10000,
                                  double tol = 1e-12);

}  // namespace hsmosaic::metrics
