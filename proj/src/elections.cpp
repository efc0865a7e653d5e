#include "voterec/elections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "voterec/errors.hpp"

namespace voterec {

namespace {

constexpr double kQuotaEps = 1e-9;
constexpr long long kSubsetGuard = 1000000;  // max committees an exact solver enumerates

void check_profile(const BallotProfile& p, int kappa) {
  if (p.num_candidates() < 1 || p.num_voters() < 1)
    throw InputError("election: profile needs at least one candidate and one voter");
  if (kappa < 1) throw InputError("election: kappa must be positive");
  if (kappa > p.num_candidates())
    throw InputError("election: kappa " + std::to_string(kappa) +
                     " exceeds the number of candidates " +
                     std::to_string(p.num_candidates()));
}

// candidate index -> position in each voter's ranking
std::vector<std::vector<int>> positions_of(const BallotProfile& p) {
  std::vector<std::vector<int>> pos(p.rankings.size(),
                                    std::vector<int>(p.candidates.size()));
  for (size_t v = 0; v < p.rankings.size(); ++v)
    for (size_t i = 0; i < p.rankings[v].size(); ++i)
      pos[v][p.rankings[v][i]] = static_cast<int>(i);
  return pos;
}

// Borda value of candidate c for voter v: m - 1 - position.
std::vector<std::vector<long>> borda_table(const BallotProfile& p) {
  const long m = p.num_candidates();
  auto pos = positions_of(p);
  std::vector<std::vector<long>> borda(pos.size(), std::vector<long>(m));
  for (size_t v = 0; v < pos.size(); ++v)
    for (long c = 0; c < m; ++c) borda[v][c] = m - 1 - pos[v][c];
  return borda;
}

bool id_before(const BallotProfile& p, int a, int b) {
  return p.candidates[a] < p.candidates[b];
}

// Top kappa candidate indices by (score descending, id ascending).
template <typename Score>
std::vector<int> top_by_score(const BallotProfile& p, const std::vector<Score>& score,
                              int kappa) {
  std::vector<int> order(p.candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return id_before(p, a, b);
  });
  order.resize(kappa);
  return order;
}

Committee make_committee(const BallotProfile& p, Rule rule,
                         const std::vector<int>& winners) {
  Committee c;
  c.rule = rule;
  c.winners.reserve(winners.size());
  for (int w : winners) c.winners.push_back(p.candidates[w]);
  return c;
}

// Each voter's best representative within the committee (tie: lowest id).
void assign_representatives(const BallotProfile& p,
                            const std::vector<std::vector<long>>& borda,
                            const std::vector<int>& winners, Committee& c) {
  for (int v = 0; v < p.num_voters(); ++v) {
    int best = winners.front();
    for (int w : winners) {
      if (borda[v][w] > borda[v][best] ||
          (borda[v][w] == borda[v][best] && id_before(p, w, best)))
        best = w;
    }
    c.assignment[p.voters[v]] = p.candidates[best];
  }
}

// Enumerates kappa-combinations of `pool` (assumed sorted by tie-break order)
// in lexicographic order, calling fn(subset) for each.
template <typename Fn>
void for_each_subset(const std::vector<int>& pool, int kappa, Fn&& fn) {
  const int m = static_cast<int>(pool.size());
  std::vector<int> idx(kappa);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<int> subset(kappa);
  while (true) {
    for (int i = 0; i < kappa; ++i) subset[i] = pool[idx[i]];
    fn(subset);
    int i = kappa - 1;
    while (i >= 0 && idx[i] == m - kappa + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < kappa; ++j) idx[j] = idx[j - 1] + 1;
  }
}

long long count_subsets_capped(int m, int kappa, long long cap) {
  long long c = 1;
  for (int i = 1; i <= kappa; ++i) {
    c = c * (m - kappa + i) / i;
    if (c > cap) return cap + 1;
  }
  return c;
}

void check_subset_guard(const BallotProfile& p, int kappa, const char* who,
                        const char* fallback) {
  if (count_subsets_capped(p.num_candidates(), kappa, kSubsetGuard) > kSubsetGuard) {
    std::ostringstream msg;
    msg << who << ": C(" << p.num_candidates() << ", " << kappa << ") exceeds "
        << kSubsetGuard << " committees; use " << fallback;
    throw InstanceTooLargeError(msg.str());
  }
}

// Candidate indices sorted by ascending id; exact solvers enumerate in this
// order so the first optimum found has the lexicographically smallest ids.
std::vector<int> candidates_by_id(const BallotProfile& p) {
  std::vector<int> order(p.candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return id_before(p, a, b); });
  return order;
}

// Hungarian algorithm (potentials form), minimizing total cost of a perfect
// matching on a square matrix. Returns row -> column.
std::vector<int> hungarian_min(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0);  // column -> row, 1-based, 0 = free
  std::vector<int> way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, false);
    do {
      used[j0] = true;
      int i0 = match[j0], j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (match[j] != 0) row_to_col[match[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace

BallotProfile ballots_from_scores(const ScoreMatrix& m) {
  if (!m.completed)
    throw InputError("ballots_from_scores: completed score matrix required");
  if (m.users.empty() || m.articles.empty())
    throw InputError("ballots_from_scores: empty score matrix");

  BallotProfile p;
  p.candidates = m.articles;
  p.voters = m.users;
  const auto& scores = *m.completed;
  const int n_candidates = static_cast<int>(p.candidates.size());
  p.rankings.resize(p.voters.size());
  for (size_t v = 0; v < p.voters.size(); ++v) {
    auto& ranking = p.rankings[v];
    ranking.resize(n_candidates);
    std::iota(ranking.begin(), ranking.end(), 0);
    std::sort(ranking.begin(), ranking.end(), [&](int a, int b) {
      double sa = scores(static_cast<Eigen::Index>(v), a);
      double sb = scores(static_cast<Eigen::Index>(v), b);
      if (sa != sb) return sa > sb;
      return p.candidates[a] < p.candidates[b];
    });
  }
  return p;
}

Committee sntv(const BallotProfile& p, int kappa) {
  check_profile(p, kappa);
  std::vector<long> first_places(p.candidates.size(), 0);
  for (const auto& ranking : p.rankings) ++first_places[ranking.front()];
  return make_committee(p, Rule::Sntv, top_by_score(p, first_places, kappa));
}

Committee bloc(const BallotProfile& p, int kappa) {
  check_profile(p, kappa);
  std::vector<long> approvals(p.candidates.size(), 0);
  for (const auto& ranking : p.rankings)
    for (int i = 0; i < kappa; ++i) ++approvals[ranking[i]];
  return make_committee(p, Rule::Bloc, top_by_score(p, approvals, kappa));
}

Committee k_borda(const BallotProfile& p, int kappa) {
  check_profile(p, kappa);
  const long m = p.num_candidates();
  std::vector<long> score(p.candidates.size(), 0);
  for (const auto& ranking : p.rankings)
    for (long i = 0; i < m; ++i) score[ranking[i]] += m - 1 - i;
  return make_committee(p, Rule::KBorda, top_by_score(p, score, kappa));
}

Committee stv(const BallotProfile& p, int kappa) {
  check_profile(p, kappa);
  const int m = p.num_candidates();
  const int n = p.num_voters();
  const double quota = static_cast<double>(n / (kappa + 1) + 1);  // Droop

  enum class State { Hopeful, Elected, Eliminated };
  std::vector<State> state(m, State::Hopeful);
  std::vector<double> weight(n, 1.0);
  std::vector<int> winners;
  winners.reserve(kappa);

  while (static_cast<int>(winners.size()) < kappa) {
    // Each ballot counts, at its current weight, for its best hopeful.
    std::vector<double> tally(m, 0.0);
    std::vector<int> holder(n, -1);
    for (int b = 0; b < n; ++b) {
      for (int c : p.rankings[b]) {
        if (state[c] == State::Hopeful) {
          holder[b] = c;
          tally[c] += weight[b];
          break;
        }
      }
    }

    std::vector<int> hopefuls;
    for (int c = 0; c < m; ++c)
      if (state[c] == State::Hopeful) hopefuls.push_back(c);
    const int seats_left = kappa - static_cast<int>(winners.size());

    if (static_cast<int>(hopefuls.size()) <= seats_left) {
      std::sort(hopefuls.begin(), hopefuls.end(), [&](int a, int b) {
        if (tally[a] != tally[b]) return tally[a] > tally[b];
        return id_before(p, a, b);
      });
      for (int c : hopefuls) winners.push_back(c);
      break;
    }

    int best = -1;
    for (int c : hopefuls) {
      if (tally[c] < quota - kQuotaEps) continue;
      if (best == -1 || tally[c] > tally[best] ||
          (tally[c] == tally[best] && id_before(p, c, best)))
        best = c;
    }

    if (best != -1) {
      state[best] = State::Elected;
      winners.push_back(best);
      // Gregory transfer: every ballot held by the winner forwards at
      // weight * surplus / tally.
      double surplus = std::max(0.0, tally[best] - quota);
      double ratio = surplus / tally[best];
      for (int b = 0; b < n; ++b)
        if (holder[b] == best) weight[b] *= ratio;
    } else {
      int worst = hopefuls.front();
      for (int c : hopefuls) {
        if (tally[c] < tally[worst] ||
            (tally[c] == tally[worst] && id_before(p, worst, c)))
          worst = c;  // ties eliminate the highest id
      }
      state[worst] = State::Eliminated;  // ballots transfer at full weight
    }
  }
  return make_committee(p, Rule::Stv, winners);
}

Committee chamberlin_courant_greedy(const BallotProfile& p, int kappa) {
  check_profile(p, kappa);
  auto borda = borda_table(p);
  const int m = p.num_candidates();
  const int n = p.num_voters();

  std::vector<long> best(n, 0);  // Borda of each voter's best representative so far
  std::vector<char> chosen(m, false);
  std::vector<int> winners;
  winners.reserve(kappa);
  for (int round = 0; round < kappa; ++round) {
    int pick = -1;
    long pick_gain = -1;
    for (int c = 0; c < m; ++c) {
      if (chosen[c]) continue;
      long gain = 0;
      for (int v = 0; v < n; ++v)
        if (borda[v][c] > best[v]) gain += borda[v][c] - best[v];
      if (gain > pick_gain || (gain == pick_gain && id_before(p, c, pick)))
        pick = c, pick_gain = gain;
    }
    chosen[pick] = true;
    winners.push_back(pick);
    for (int v = 0; v < n; ++v) best[v] = std::max(best[v], borda[v][pick]);
  }

  Committee c = make_committee(p, Rule::Cc, winners);
  assign_representatives(p, borda, winners, c);
  return c;
}

Committee chamberlin_courant_exact(const BallotProfile& p, int kappa) {
  check_profile(p, kappa);
  check_subset_guard(p, kappa, "chamberlin_courant_exact", "chamberlin_courant_greedy");
  auto borda = borda_table(p);
  const int n = p.num_voters();

  std::vector<int> best_subset;
  long best_value = -1;
  for_each_subset(candidates_by_id(p), kappa, [&](const std::vector<int>& subset) {
    long value = 0;
    for (int v = 0; v < n; ++v) {
      long rep = 0;
      for (int c : subset) rep = std::max(rep, borda[v][c]);
      value += rep;
    }
    if (value > best_value) {
      best_value = value;
      best_subset = subset;
    }
  });

  Committee c = make_committee(p, Rule::CcExact, best_subset);
  assign_representatives(p, borda, best_subset, c);
  return c;
}

Committee monroe_greedy(const BallotProfile& p, int kappa) {
  check_profile(p, kappa);
  const int n = p.num_voters();
  if (kappa > n)
    throw InputError("monroe: kappa " + std::to_string(kappa) +
                     " exceeds the number of voters " + std::to_string(n) +
                     "; cannot balance the assignment");
  auto borda = borda_table(p);
  const int m = p.num_candidates();
  const int base = n / kappa;
  const int remainder = n % kappa;

  std::vector<char> chosen(m, false);
  std::vector<char> assigned(n, false);
  std::vector<int> winners;
  winners.reserve(kappa);
  Committee result;
  result.rule = Rule::Monroe;

  for (int round = 0; round < kappa; ++round) {
    // The first `remainder` rounds seat the winners that represent one extra voter.
    const int capacity = base + (round < remainder ? 1 : 0);

    std::vector<int> unassigned;
    for (int v = 0; v < n; ++v)
      if (!assigned[v]) unassigned.push_back(v);

    int pick = -1;
    long pick_gain = -1;
    std::vector<int> pick_voters;
    std::vector<int> voters = unassigned;
    for (int c = 0; c < m; ++c) {
      if (chosen[c]) continue;
      // Most devoted unassigned voters first (ties: ascending voter id).
      std::sort(voters.begin(), voters.end(), [&](int a, int b) {
        if (borda[a][c] != borda[b][c]) return borda[a][c] > borda[b][c];
        return p.voters[a] < p.voters[b];
      });
      long gain = 0;
      for (int i = 0; i < capacity; ++i) gain += borda[voters[i]][c];
      if (gain > pick_gain || (gain == pick_gain && id_before(p, c, pick))) {
        pick = c;
        pick_gain = gain;
        pick_voters.assign(voters.begin(), voters.begin() + capacity);
      }
    }

    chosen[pick] = true;
    winners.push_back(pick);
    for (int v : pick_voters) {
      assigned[v] = true;
      result.assignment[p.voters[v]] = p.candidates[pick];
    }
  }

  result.winners.reserve(kappa);
  for (int w : winners) result.winners.push_back(p.candidates[w]);
  return result;
}

Committee monroe_exact(const BallotProfile& p, int kappa) {
  check_profile(p, kappa);
  const int n = p.num_voters();
  if (kappa > n)
    throw InputError("monroe: kappa " + std::to_string(kappa) +
                     " exceeds the number of voters " + std::to_string(n) +
                     "; cannot balance the assignment");
  if (n > 10)
    throw InstanceTooLargeError(
        "monroe_exact: limited to 10 voters; use monroe_greedy");
  check_subset_guard(p, kappa, "monroe_exact", "monroe_greedy");

  auto borda = borda_table(p);
  const int base = n / kappa;
  const int remainder = n % kappa;
  // Every winner gets `base` mandatory voter slots; when n % kappa > 0 each
  // winner also gets one optional slot, and dummy rows absorb the optional
  // slots that stay empty. Dummies are barred from mandatory slots, which
  // keeps every winner's load in {base, base + 1}.
  const int slots_per_winner = base + (remainder > 0 ? 1 : 0);
  const int size = kappa * slots_per_winner;
  const int dummies = size - n;
  const double forbid = 1e9;

  std::vector<int> best_subset;
  std::vector<int> best_match;
  double best_value = -std::numeric_limits<double>::infinity();

  std::vector<std::vector<double>> cost(size, std::vector<double>(size));
  for_each_subset(candidates_by_id(p), kappa, [&](const std::vector<int>& subset) {
    for (int row = 0; row < size; ++row) {
      for (int col = 0; col < size; ++col) {
        int winner = subset[col / slots_per_winner];
        bool optional_slot = remainder > 0 && col % slots_per_winner == base;
        if (row < n)
          cost[row][col] = -static_cast<double>(borda[row][winner]);
        else
          cost[row][col] = optional_slot ? 0.0 : forbid;
      }
    }
    auto match = hungarian_min(cost);
    double value = 0.0;
    for (int v = 0; v < n; ++v)
      value += borda[v][subset[match[v] / slots_per_winner]];
    if (value > best_value) {
      best_value = value;
      best_subset = subset;
      best_match = match;
    }
  });

  Committee c = make_committee(p, Rule::MonroeExact, best_subset);
  for (int v = 0; v < n; ++v)
    c.assignment[p.voters[v]] = p.candidates[best_subset[best_match[v] / slots_per_winner]];
  return c;
}

Committee elect(const BallotProfile& p, Rule rule, int kappa) {
  switch (rule) {
    case Rule::Sntv: return sntv(p, kappa);
    case Rule::Bloc: return bloc(p, kappa);
    case Rule::KBorda: return k_borda(p, kappa);
    case Rule::Stv: return stv(p, kappa);
    case Rule::Cc: return chamberlin_courant_greedy(p, kappa);
    case Rule::Monroe: return monroe_greedy(p, kappa);
    case Rule::CcExact: return chamberlin_courant_exact(p, kappa);
    case Rule::MonroeExact: return monroe_exact(p, kappa);
  }
  throw InputError("elect: unknown rule");
}

std::string committee_to_json(const Committee& committee) {
  nlohmann::ordered_json obj;
  obj["rule"] = rule_name(committee.rule);
  obj["kappa"] = committee.winners.size();
  obj["winners"] = committee.winners;
  if (!committee.assignment.empty()) obj["assignment"] = committee.assignment;
  return obj.dump(2) + "\n";
}

Committee committee_from_json(const std::string& text) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("committee JSON: ") + e.what());
  }
  Committee c;
  try {
    c.rule = parse_rule(obj.at("rule").get<std::string>());
    c.winners = obj.at("winners").get<std::vector<std::string>>();
    size_t kappa = obj.at("kappa").get<size_t>();
    if (kappa != c.winners.size())
      throw InputError("committee JSON: kappa does not match the winner count");
    if (obj.contains("assignment"))
      c.assignment = obj["assignment"].get<std::map<std::string, std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("committee JSON: ") + e.what());
  }
  return c;
}

}  // namespace voterec
