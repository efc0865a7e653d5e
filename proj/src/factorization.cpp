#include "voterec/factorization.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <vector>

#include "voterec/errors.hpp"
#include "voterec/util.hpp"

namespace voterec {

namespace {

struct Entry {
  int user;
  int article;
  double value;
};

double cost(const std::vector<Entry>& entries, const Eigen::MatrixXd& p,
            const Eigen::MatrixXd& q, double beta) {
  double c = 0.0;
  for (const auto& e : entries) {
    double err = e.value - p.row(e.user).dot(q.row(e.article));
    c += err * err;
  }
  c += 0.5 * beta * (p.squaredNorm() + q.squaredNorm());
  return c;
}

}  // namespace

FactorizationResult factorize(const ScoreMatrix& v, const FactorizationConfig& cfg) {
  const int n_users = static_cast<int>(v.users.size());
  const int n_articles = static_cast<int>(v.articles.size());
  if (v.observed.empty())
    throw InputError("factorize: score matrix has no observed entries");
  if (cfg.latent_dim < 1) throw InputError("factorize: latent_dim must be positive");
  if (cfg.latent_dim > std::min(n_users, n_articles))
    throw InputError("factorize: latent_dim " + std::to_string(cfg.latent_dim) +
                     " exceeds min(|users|, |articles|) = " +
                     std::to_string(std::min(n_users, n_articles)));
  if (!(cfg.learning_rate > 0.0))
    throw InputError("factorize: learning_rate must be positive");
  if (cfg.regularization < 0.0)
    throw InputError("factorize: regularization must be non-negative");
  if (!(cfg.convergence_tol > 0.0))
    throw InputError("factorize: convergence_tol must be positive");
  if (cfg.max_epochs < 1) throw InputError("factorize: max_epochs must be positive");

  // Observed entries in fixed row-major order; no shuffling, so runs with the
  // same seed are bit-reproducible.
  std::vector<Entry> entries;
  entries.reserve(v.observed.size());
  for (const auto& [key, value] : v.observed) {
    if (key.first < 0 || key.first >= n_users || key.second < 0 || key.second >= n_articles)
      throw InputError("factorize: observed entry outside the matrix");
    entries.push_back({key.first, key.second, value});
  }

  const int k = cfg.latent_dim;
  const double alpha = cfg.learning_rate;
  const double beta = cfg.regularization;

  std::mt19937_64 rng(cfg.rng_seed);
  Eigen::MatrixXd p(n_users, k), q(n_articles, k);
  for (int i = 0; i < n_users; ++i)
    for (int j = 0; j < k; ++j) p(i, j) = uniform01(rng);
  for (int i = 0; i < n_articles; ++i)
    for (int j = 0; j < k; ++j) q(i, j) = uniform01(rng);

  FactorizationResult result;
  result.initial_cost = cost(entries, p, q, beta);

  double prev_cost = result.initial_cost;
  double current_cost = prev_cost;
  Eigen::RowVectorXd pu(k), qa(k);
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    for (const auto& e : entries) {
      pu = p.row(e.user);
      qa = q.row(e.article);
      double err = e.value - pu.dot(qa);
      p.row(e.user) = (pu + alpha * (2.0 * err * qa - beta * pu)).cwiseMax(0.0);
      q.row(e.article) = (qa + alpha * (2.0 * err * pu - beta * qa)).cwiseMax(0.0);
    }
    current_cost = cost(entries, p, q, beta);
    if (!std::isfinite(current_cost))
      throw NumericalError(
          "factorize: cost diverged to a non-finite value; try a smaller learning_rate");
    result.epochs_run = epoch;
    if (prev_cost - current_cost < cfg.convergence_tol) {
      result.converged = true;
      break;
    }
    prev_cost = current_cost;
  }

  result.final_cost = current_cost;
  result.user_factors = std::move(p);
  result.item_factors = std::move(q);
  return result;
}

ScoreMatrix merge(const ScoreMatrix& v, const FactorizationResult& result) {
  const auto n_users = static_cast<Eigen::Index>(v.users.size());
  const auto n_articles = static_cast<Eigen::Index>(v.articles.size());
  if (result.user_factors.rows() != n_users ||
      result.item_factors.rows() != n_articles ||
      result.user_factors.cols() != result.item_factors.cols())
    throw InputError("merge: factor dimensions do not match the score matrix");

  ScoreMatrix out = v;
  Eigen::MatrixXd full = result.user_factors * result.item_factors.transpose();
  for (const auto& [key, value] : v.observed) full(key.first, key.second) = value;
  out.completed = std::move(full);
  return out;
}

void write_factors_csv(const Eigen::MatrixXd& factors,
                       const std::vector<std::string>& row_ids, std::ostream& out) {
  out << "row_id";
  for (Eigen::Index j = 0; j < factors.cols(); ++j) out << ",f" << j;
  out << '\n';
  for (Eigen::Index i = 0; i < factors.rows(); ++i) {
    out << row_ids[static_cast<size_t>(i)];
    for (Eigen::Index j = 0; j < factors.cols(); ++j)
      out << ',' << fmt_double(factors(i, j));
    out << '\n';
  }
}

}  // namespace voterec
