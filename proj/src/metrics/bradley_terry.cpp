#include "hsmosaic/metrics/bradley_terry.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include "hsmosaic/error.hpp"

namespace hsmosaic::metrics {

void VoteTable::validate() const {
  if (methods < 2) throw ValidationError("vote table needs at least two methods");
  if (wins.size() != static_cast<std::size_t>(methods) * methods) {
    throw ValidationError("vote table size mismatch");
  }
  for (int i = 0; i < methods; ++i) {
    if (at(i, i) != 0) throw ValidationError("vote table diagonal must be zero");
    for (int j = 0; j < methods; ++j) {
      if (at(i, j) < 0) throw ValidationError("vote counts must be non-negative");
    }
  }
}

VoteTable VoteTable::load(std::istream& in, const std::string& origin) {
  VoteTable v;
  if (!(in >> v.methods)) throw FormatError(origin + ": expected method count on line 1");
  if (v.methods < 2 || v.methods > 1000) {
    throw FormatError(origin + ": implausible method count " + std::to_string(v.methods));
  }
  v.wins.resize(static_cast<std::size_t>(v.methods) * v.methods);
  for (std::size_t k = 0; k < v.wins.size(); ++k) {
    if (!(in >> v.wins[k])) {
      throw FormatError(origin + ": expected " + std::to_string(v.wins.size()) +
                        " counts, got " + std::to_string(k));
    }
  }
  try {
    v.validate();
  } catch (const ValidationError& e) {
    throw FormatError(origin + ": " + e.what());
  }
  return v;
}

VoteTable VoteTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open vote table " + path.string());
  return load(in, path.string());
}

double bt_log_likelihood(const VoteTable& votes, std::span<const double> pi) {
  const int k = votes.methods;
  double ll = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i == j || votes.at(i, j) == 0) continue;
      ll += static_cast<double>(votes.at(i, j)) * (std::log(pi[i]) - std::log(pi[i] + pi[j]));
    }
  }
  return ll;
}

PreferenceScale fit_bradley_terry(const VoteTable& votes, int max_iters, double tol) {
  votes.validate();
  if (max_iters < 1) throw ValidationError("max_iters must be >= 1");
  if (!(tol >= 0.0)) throw ValidationError("tol must be >= 0");
  const int k = votes.methods;

  std::vector<double> total_wins(k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) total_wins[i] += static_cast<double>(votes.at(i, j));
    if (total_wins[i] <= 0.0) {
      throw DegenerateError("method " + std::to_string(i) +
                            " has no wins; its maximum-likelihood worth is degenerate");
    }
  }

  // The comparison graph (methods as nodes, compared pairs as edges) must be
  // connected, otherwise relative worths across components are unidentified.
  std::vector<char> seen(k, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < k; ++j) {
      if (!seen[j] && (votes.at(i, j) + votes.at(j, i)) > 0) {
        seen[j] = 1;
        stack.push_back(j);
      }
    }
  }
  for (int i = 0; i < k; ++i) {
    if (!seen[i]) throw DegenerateError("comparison graph is disconnected");
  }

  PreferenceScale scale;
  scale.pi.assign(k, 1.0 / k);
  std::vector<double> next(k);
  for (int sweep = 1; sweep <= max_iters; ++sweep) {
    for (int i = 0; i < k; ++i) {
      double denom = 0.0;
      for (int j = 0; j < k; ++j) {
        if (j == i) continue;
        const double n_ij = static_cast<double>(votes.at(i, j) + votes.at(j, i));
        if (n_ij > 0.0) denom += n_ij / (scale.pi[i] + scale.pi[j]);
      }
      next[i] = total_wins[i] / denom;
    }
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    double delta = 0.0;
    for (int i = 0; i < k; ++i) {
      next[i] /= total;
      delta = std::max(delta, std::abs(next[i] - scale.pi[i]));
    }
    scale.pi = next;
    scale.iterations = sweep;
    scale.loglik_history.push_back(bt_log_likelihood(votes, scale.pi));
    if (delta < tol) {
      scale.converged = true;
      break;
    }
  }
  return scale;
}

}  // namespace hsmosaic::metrics
