#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>

#include "voterec/types.hpp"

namespace voterec {

struct FactorizationConfig {
  int latent_dim = 20;
  double learning_rate = 0.0002;   // alpha
  double regularization = 0.02;    // beta
  double convergence_tol = 0.001;  // stop when the per-epoch cost decrease falls below this
  int max_epochs = 5000;
  uint64_t rng_seed = 0;
};

struct FactorizationResult {
  Eigen::MatrixXd user_factors;  // |users| x latent_dim, entries >= 0
  Eigen::MatrixXd item_factors;  // |articles| x latent_dim, entries >= 0
  int epochs_run = 0;
  double initial_cost = 0.0;
  double final_cost = 0.0;
  bool converged = false;
};

// Regularized gradient descent over the observed entries with factors clamped
// to stay non-negative after every update. Minimizes
//   sum over observed (v - p_u . q_a)^2  +  (beta/2) (|P|^2 + |Q|^2),
// visiting entries in fixed row-major order; deterministic given rng_seed.
FactorizationResult factorize(const ScoreMatrix& v, const FactorizationConfig& cfg);

// V*: observed entries verbatim, predictions P Q^T elsewhere.
ScoreMatrix merge(const ScoreMatrix& v, const FactorizationResult& result);

// Factor CSV: header `row_id,f0,...,f{k-1}`, one row per user/article.
void write_factors_csv(const Eigen::MatrixXd& factors,
                       const std::vector<std::string>& row_ids, std::ostream& out);

}  // namespace voterec
