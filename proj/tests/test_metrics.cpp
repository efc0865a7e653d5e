#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "voterec/errors.hpp"
#include "voterec/metrics.hpp"
#include "voterec/util.hpp"

using namespace voterec;

namespace {

ScoreMatrix completed_3x2() {
    // u1 ranks (a, b, c); u2 ranks (a, c, b).
    ScoreMatrix m;
    m.users = {"u1", "u2"};
    m.articles = {"a", "b", "c"};
    Eigen::MatrixXd full(2, 3);
    full << 9, 8, 1, 9, 1, 8;
    m.completed = full;
    return m;
}

Committee committee_of(std::vector<std::string> winners) {
    Committee c;
    c.winners = std::move(winners);
    return c;
}

InteractionLog log_of(std::vector<InteractionEvent> events) {
    InteractionLog log;
    for (auto& ev : events) log.add(std::move(ev));
    return log;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("recommending every article satisfies everyone") {
    auto m = completed_3x2();
    CHECK(satisfaction(committee_of({"a", "b", "c"}), m, 3) == 1.0);
}

TEST_CASE("two-user example is exactly three quarters") {
    auto m = completed_3x2();
    CHECK(satisfaction(committee_of({"a", "b"}), m, 2) == 0.75);
}

TEST_CASE("satisfaction is one exactly when the committee is every user's top set") {
    auto m = completed_3x2();
    CHECK(satisfaction(committee_of({"a"}), m, 1) == 1.0);  // both rank a first
    CHECK(satisfaction(committee_of({"b"}), m, 1) == 0.0);  // in nobody's top-1
    CHECK(satisfaction(committee_of({"a", "c"}), m, 2) == 0.75);
}

TEST_CASE("satisfaction preconditions") {
    auto m = completed_3x2();
    CHECK_THROWS_AS(satisfaction(committee_of({"a"}), m, 0), InputError);
    CHECK_THROWS_WITH_AS(satisfaction(committee_of({"a"}), m, 2),
                         doctest::Contains("committee has 1 winner"), InputError);
    CHECK_THROWS_AS(satisfaction(committee_of({"a", "b", "c", "c"}), m, 4), InputError);
    CHECK_THROWS_WITH_AS(satisfaction(committee_of({"x"}), m, 1),
                         doctest::Contains("not a known article"), InputError);

    ScoreMatrix sparse = m;
    sparse.completed.reset();
    CHECK_THROWS_WITH_AS(satisfaction(committee_of({"a"}), sparse, 1),
                         doctest::Contains("factorize"), InputError);

    ScoreMatrix empty;
    empty.articles = {"a"};
    empty.completed = Eigen::MatrixXd(0, 1);
    CHECK_THROWS_AS(satisfaction(committee_of({"a"}), empty, 1), InputError);
}

TEST_CASE("swapping in a more popular article never hurts") {
    // b sits in u1's top-2 only; a sits in both users' top-2.
    auto m = completed_3x2();
    double with_c = satisfaction(committee_of({"b", "c"}), m, 2);
    double with_a = satisfaction(committee_of({"a", "b"}), m, 2);
    CHECK(with_a >= with_c);
}

TEST_CASE("satisfaction matches the brute-force oracle, ties included") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 1 + static_cast<int>(uniform_below(rng, 6));
        int m = 1 + static_cast<int>(uniform_below(rng, 6));
        int kappa = 1 + static_cast<int>(uniform_below(rng, m));
        // Low-cardinality scores force plenty of rank ties.
        auto scores = oracle::random_completed(rng, n, m, trial % 2 ? 3 : 0);
        std::vector<std::string> winners;
        std::vector<int> idx(m);
        std::iota(idx.begin(), idx.end(), 0);
        for (int i = 0; i < kappa; ++i) {
            int j = i + static_cast<int>(uniform_below(rng, idx.size() - i));
            std::swap(idx[i], idx[j]);
            winners.push_back(scores.articles[idx[i]]);
        }
        double got = satisfaction(committee_of(winners), scores, kappa);
        double want = oracle::satisfaction_oracle(winners, scores, kappa);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
        CHECK(got >= 0.0);
        CHECK(got <= 1.0);
    }
}

TEST_CASE("reference bias is the left/right time ratio") {
    std::vector<ArticleLabel> labels = {{"a1", Side::Left, 1, 0},
                                        {"a2", Side::Right, 0, 1},
                                        {"a3", Side::Neutral, 0, 0}};
    auto even = log_of({{"u1", "a1", 50.0}, {"u2", "a1", 50.0}, {"u1", "a2", 100.0}});
    CHECK(reference_bias(even, labels) == 1.0);

    auto skewed = log_of({{"u1", "a1", 142.3}, {"u1", "a2", 100.0}, {"u1", "a3", 999.0}});
    CHECK(reference_bias(skewed, labels) == doctest::Approx(1.423).epsilon(1e-12));

    // Unlabeled and neutral articles never enter either sum.
    auto with_unknown = log_of({{"u1", "a1", 10.0}, {"u1", "a2", 10.0}, {"u1", "zz", 5.0}});
    CHECK(reference_bias(with_unknown, labels) == 1.0);
}

TEST_CASE("reference bias requires reading time on both sides") {
    std::vector<ArticleLabel> labels = {{"a1", Side::Left, 1, 0}, {"a2", Side::Right, 0, 1}};
    auto left_only = log_of({{"u1", "a1", 30.0}});
    CHECK_THROWS_WITH_AS(reference_bias(left_only, labels),
                         doctest::Contains("right-labeled"), InputError);
    auto right_only = log_of({{"u1", "a2", 30.0}});
    CHECK_THROWS_WITH_AS(reference_bias(right_only, labels),
                         doctest::Contains("left-labeled"), InputError);
}

TEST_CASE("bias reproduces the worked example") {
    CHECK(std::abs(bias(10, 10, 1.423) - 0.17457) < 1e-5);
}

TEST_CASE("bias endpoints are exact") {
    CHECK(bias(0, 7, 0.9) == 1.0);
    CHECK(bias(5, 0, 2.5) == -1.0);
    CHECK(bias(3, 3, 1.0) == 0.0);  // left equals rho * right
    CHECK(bias(10, 4, 2.5) == 0.0);
}

TEST_CASE("bias is scale invariant") {
    const double base = bias(7, 3, 1.423);
    for (long c : {2L, 5L, 10L}) {
        CHECK(std::abs(bias(7 * c, 3 * c, 1.423) - base) < 1e-12);
    }
}

TEST_CASE("bias moves with the right-hand share") {
    double prev = -2.0;
    for (long r = 0; r <= 6; ++r) {
        double b = bias(6 - r, r, 1.1);
        CHECK(b > prev);
        prev = b;
    }
}

TEST_CASE("bias preconditions") {
    CHECK_THROWS_AS(bias(-1, 2, 1.0), InputError);
    CHECK_THROWS_AS(bias(2, -1, 1.0), InputError);
    CHECK_THROWS_AS(bias(1, 1, 0.0), InputError);
    CHECK_THROWS_AS(bias(1, 1, -0.5), InputError);
    CHECK_THROWS_AS(bias(1, 1, std::nan("")), InputError);
    CHECK_THROWS_WITH_AS(bias(0, 0, 1.0), doctest::Contains("no ideological evidence"),
                         InputError);
}

TEST_CASE("report csv round-trips exactly") {
    std::vector<FairnessReport> rows(2);
    rows[0].rule = Rule::KBorda;
    rows[0].satisfaction = 0.731234567890123;
    rows[0].bias = -0.1234567890123456;
    rows[0].rho = 1.423;
    rows[0].left_count = 12;
    rows[0].right_count = 9;
    rows[0].kappa = 10;
    rows[1].rule = Rule::MonroeExact;
    rows[1].satisfaction = 1.0;
    rows[1].bias = 1.0;
    rows[1].rho = 0.017;
    rows[1].kappa = 3;

    std::ostringstream out;
    write_report_csv(rows, out);
    std::istringstream in(out.str());
    auto back = read_report_csv(in);
    REQUIRE(back.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
        CHECK(back[i].rule == rows[i].rule);
        CHECK(back[i].kappa == rows[i].kappa);
        CHECK(back[i].satisfaction == rows[i].satisfaction);  // %.17g is lossless
        CHECK(back[i].bias == rows[i].bias);
        CHECK(back[i].rho == rows[i].rho);
        CHECK(back[i].left_count == rows[i].left_count);
        CHECK(back[i].right_count == rows[i].right_count);
    }

    std::istringstream bad("rule,oops\n");
    CHECK_THROWS_AS(read_report_csv(bad), InputError);
    std::istringstream short_row(
        "rule,kappa,satisfaction,bias,rho,left_count,right_count\nsntv,1,0.5\n");
    CHECK_THROWS_WITH_AS(read_report_csv(short_row), doctest::Contains("7 fields"),
                         InputError);
}

TEST_CASE("markdown report has one row per rule") {
    std::vector<FairnessReport> rows(2);
    rows[0].rule = Rule::Sntv;
    rows[0].satisfaction = 0.2;
    rows[0].bias = 0.0031;
    rows[1].rule = Rule::Cc;
    rows[1].satisfaction = 0.232;
    rows[1].bias = -0.3626;

    std::ostringstream out;
    write_report_markdown(rows, out);
    const std::string md = out.str();
    CHECK(md.find("| Election Method | Satisfaction | Bias |") != std::string::npos);
    CHECK(md.find("| SNTV | 0.200 | 0.003 |") != std::string::npos);
    CHECK(md.find("| CC | 0.232 | -0.363 |") != std::string::npos);
}

}  // TEST_SUITE
