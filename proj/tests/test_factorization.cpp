#include <doctest.h>

#include <cmath>
#include <sstream>

#include "voterec/errors.hpp"
#include "voterec/factorization.hpp"

using namespace voterec;

namespace {

// Rank-1 outer product x yᵀ with optional hidden cells.
ScoreMatrix rank1(const std::vector<double>& x, const std::vector<double>& y,
                  std::initializer_list<std::pair<int, int>> hidden = {}) {
    ScoreMatrix m;
    for (size_t i = 0; i < x.size(); ++i) m.users.push_back("u" + std::to_string(i + 1));
    for (size_t j = 0; j < y.size(); ++j)
        m.articles.push_back(std::string(1, static_cast<char>('a' + j)));
    for (int i = 0; i < static_cast<int>(x.size()); ++i)
        for (int j = 0; j < static_cast<int>(y.size()); ++j) {
            bool skip = false;
            for (auto [hi, hj] : hidden) skip = skip || (hi == i && hj == j);
            if (!skip) m.observed[{i, j}] = x[i] * y[j];
        }
    return m;
}

FactorizationConfig test_config() {
    FactorizationConfig cfg;
    cfg.latent_dim = 1;
    cfg.learning_rate = 0.005;
    cfg.regularization = 0.0;
    cfg.convergence_tol = 0.001;  // the pinned stopping criterion
    cfg.max_epochs = 20000;
    cfg.rng_seed = 1;
    return cfg;
}

double prediction_rmse(const FactorizationResult& r, const std::vector<double>& x,
                       const std::vector<double>& y) {
    Eigen::MatrixXd pred = r.user_factors * r.item_factors.transpose();
    double sq = 0.0;
    for (int i = 0; i < pred.rows(); ++i)
        for (int j = 0; j < pred.cols(); ++j) {
            double e = pred(i, j) - x[i] * y[j];
            sq += e * e;
        }
    return std::sqrt(sq / (pred.rows() * pred.cols()));
}

}  // namespace

TEST_SUITE("factorization") {

TEST_CASE("fully observed rank-1 4x4 is recovered") {
    auto m = rank1({1, 2, 3, 4}, {1, 2, 3, 4});
    auto r = factorize(m, test_config());
    CHECK(r.converged);
    CHECK(r.final_cost < r.initial_cost);
    CHECK(prediction_rmse(r, {1, 2, 3, 4}, {1, 2, 3, 4}) < 0.05);
}

TEST_CASE("hidden rank-1 entry is predicted within 10 percent") {
    auto m = rank1({1, 2, 3}, {1, 2, 3}, {{2, 2}});
    REQUIRE(m.observed.size() == 8);
    auto r = factorize(m, test_config());
    CHECK(r.converged);
    auto full = merge(m, r);
    REQUIRE(full.completed.has_value());
    double predicted = (*full.completed)(2, 2);
    CHECK(predicted > 9.0 * 0.9);
    CHECK(predicted < 9.0 * 1.1);
    // the 8 observed cells come through bit-identical
    for (const auto& [key, v] : m.observed)
        CHECK((*full.completed)(key.first, key.second) == v);
}

TEST_CASE("training is deterministic in the seed") {
    auto m = rank1({1, 2, 3}, {3, 1, 2});
    auto a = factorize(m, test_config());
    auto b = factorize(m, test_config());
    CHECK(a.epochs_run == b.epochs_run);
    CHECK(a.final_cost == b.final_cost);
    CHECK((a.user_factors - b.user_factors).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.item_factors - b.item_factors).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("factors and predictions stay non-negative") {
    ScoreMatrix m;
    m.users = {"u1", "u2", "u3"};
    m.articles = {"a", "b", "c", "d"};
    // a spread of values with a hole
    int k = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j)
            if (++k % 3 != 0) m.observed[{i, j}] = 1.0 + ((i * 7 + j * 3) % 9);
    auto cfg = test_config();
    cfg.latent_dim = 2;
    cfg.regularization = 0.02;
    auto r = factorize(m, cfg);
    CHECK(r.user_factors.minCoeff() >= 0.0);
    CHECK(r.item_factors.minCoeff() >= 0.0);
    Eigen::MatrixXd pred = r.user_factors * r.item_factors.transpose();
    CHECK(pred.minCoeff() >= 0.0);
}

TEST_CASE("divergence reports a numerical error naming the learning rate") {
    // The clamp at zero tames most blow-ups into a flat cost, so provoke a
    // genuine overflow: one epoch at this scale pushes the cost past DBL_MAX.
    ScoreMatrix m;
    m.users = {"u1"};
    m.articles = {"a"};
    m.observed[{0, 0}] = 1e155;
    auto cfg = test_config();
    cfg.learning_rate = 1.0;
    CHECK_THROWS_WITH_AS(factorize(m, cfg), doctest::Contains("learning_rate"),
                         NumericalError);
}

TEST_CASE("preconditions are enforced") {
    auto m = rank1({1, 2}, {1, 2});
    auto cfg = test_config();
    SUBCASE("empty support") {
        ScoreMatrix empty;
        empty.users = {"u1"};
        empty.articles = {"a"};
        CHECK_THROWS_AS(factorize(empty, cfg), InputError);
    }
    SUBCASE("latent_dim too large") {
        cfg.latent_dim = 3;
        CHECK_THROWS_AS(factorize(m, cfg), InputError);
    }
    SUBCASE("latent_dim < 1") {
        cfg.latent_dim = 0;
        CHECK_THROWS_AS(factorize(m, cfg), InputError);
    }
    SUBCASE("bad learning rate") {
        cfg.learning_rate = 0.0;
        CHECK_THROWS_AS(factorize(m, cfg), InputError);
    }
    SUBCASE("bad tolerance") {
        cfg.convergence_tol = 0.0;
        CHECK_THROWS_AS(factorize(m, cfg), InputError);
    }
    SUBCASE("bad epoch cap") {
        cfg.max_epochs = 0;
        CHECK_THROWS_AS(factorize(m, cfg), InputError);
    }
    SUBCASE("negative regularization") {
        cfg.regularization = -0.1;
        CHECK_THROWS_AS(factorize(m, cfg), InputError);
    }
}

TEST_CASE("merge keeps observed cells verbatim and is idempotent") {
    auto m = rank1({1, 2, 3}, {1, 2, 3}, {{0, 2}, {2, 0}});
    auto r = factorize(m, test_config());
    auto once = merge(m, r);
    auto twice = merge(once, r);
    REQUIRE(once.completed.has_value());
    CHECK((*once.completed - *twice.completed).cwiseAbs().maxCoeff() == 0.0);
    for (const auto& [key, v] : m.observed) CHECK((*once.completed)(key.first, key.second) == v);
}

TEST_CASE("fully observed merge equals the input matrix") {
    auto m = rank1({2, 5}, {1, 3});
    auto r = factorize(m, test_config());
    auto full = merge(m, r);
    for (const auto& [key, v] : m.observed) CHECK((*full.completed)(key.first, key.second) == v);
    CHECK(full.completed->rows() == 2);
    CHECK(full.completed->cols() == 2);
}

TEST_CASE("merge rejects mismatched shapes") {
    auto m = rank1({1, 2, 3}, {1, 2, 3});
    auto r = factorize(rank1({1, 2}, {1, 2}), test_config());
    CHECK_THROWS_AS(merge(m, r), InputError);
}

TEST_CASE("factor csv has the documented header") {
    auto m = rank1({1, 2}, {1, 2});
    auto cfg = test_config();
    auto r = factorize(m, cfg);
    std::ostringstream out;
    write_factors_csv(r.user_factors, m.users, out);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "row_id,f0");
    std::string row;
    int rows = 0;
    while (std::getline(lines, row))
        if (!row.empty()) ++rows;
    CHECK(rows == 2);
}

}  // TEST_SUITE
