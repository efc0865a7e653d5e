#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "voterec/errors.hpp"

namespace voterec {

// One reading event: how many seconds a user actively spent on an article.
// Multiple events for the same (user, article) pair are legal and are summed
// when scores are computed.
struct InteractionEvent {
  std::string user_id;
  std::string article_id;
  double active_time = 0.0;  // seconds, strictly positive once ingested

  bool operator==(const InteractionEvent&) const = default;
};

struct InteractionLog {
  std::vector<InteractionEvent> events;
  std::set<std::string> users;
  std::set<std::string> articles;

  void add(InteractionEvent ev) {
    users.insert(ev.user_id);
    articles.insert(ev.article_id);
    events.push_back(std::move(ev));
  }

  bool operator==(const InteractionLog&) const = default;
};

struct ArticleDoc {
  std::string article_id;
  std::string body;
  std::string source;  // publisher name, may be empty
};

// Sparse observed user x article scores; `completed` is filled in by the
// factorization merge and agrees with `observed` on the observed support.
struct ScoreMatrix {
  std::vector<std::string> users;     // row ids, ascending
  std::vector<std::string> articles;  // column ids, ascending
  std::map<std::pair<int, int>, double> observed;  // (row, col) -> score, row-major
  std::optional<Eigen::MatrixXd> completed;

  int row_of(const std::string& user_id) const {
    auto it = std::lower_bound(users.begin(), users.end(), user_id);
    if (it == users.end() || *it != user_id) return -1;
    return static_cast<int>(it - users.begin());
  }

  int col_of(const std::string& article_id) const {
    auto it = std::lower_bound(articles.begin(), articles.end(), article_id);
    if (it == articles.end() || *it != article_id) return -1;
    return static_cast<int>(it - articles.begin());
  }
};

// Strict rankings: rankings[v][pos] is the candidate index voter v places at
// position pos (0 = most preferred). Every ranking is a permutation of the
// candidate indices.
struct BallotProfile {
  std::vector<std::string> candidates;
  std::vector<std::string> voters;
  std::vector<std::vector<int>> rankings;

  int num_candidates() const { return static_cast<int>(candidates.size()); }
  int num_voters() const { return static_cast<int>(voters.size()); }
};

enum class Rule {
  Sntv,
  Bloc,
  KBorda,
  Stv,
  Cc,           // greedy Chamberlin-Courant
  Monroe,       // greedy Monroe
  CcExact,
  MonroeExact,
};

const char* rule_name(Rule r);          // "sntv", "kborda", "cc-exact", ...
const char* rule_display_name(Rule r);  // "SNTV", "k-Borda", "CC-exact", ...
Rule parse_rule(const std::string& name);

struct Committee {
  std::vector<std::string> winners;  // kappa distinct candidate ids, election order
  Rule rule = Rule::Sntv;
  // voter -> winner, present for CC (best representative) and Monroe (balanced).
  std::map<std::string, std::string> assignment;
};

struct SeedWord {
  std::string word;
  double pmi = 0.0;
};

struct SeedLexicon {
  std::vector<SeedWord> left;   // PMI descending
  std::vector<SeedWord> right;  // PMI descending
  int top_n = 0;
  bool underfull = false;  // a side had fewer eligible words than requested
};

enum class Side { Left, Right, Neutral };

const char* side_name(Side s);
Side parse_side(const std::string& name);

struct ArticleLabel {
  std::string article_id;
  Side label = Side::Neutral;
  long left_hits = 0;
  long right_hits = 0;
};

struct FairnessReport {
  Rule rule = Rule::Sntv;
  double satisfaction = 0.0;  // in [0, 1]
  double bias = 0.0;          // in [-1, 1]
  double rho = 0.0;           // platform reference bias, > 0
  long left_count = 0;
  long right_count = 0;
  int kappa = 0;
};

}  // namespace voterec
