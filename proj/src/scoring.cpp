#include "voterec/scoring.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "voterec/errors.hpp"
#include "voterec/util.hpp"

namespace voterec {

ScoreMap raw_scores(const InteractionLog& log) {
  if (log.events.empty()) throw InputError("raw_scores: interaction log is empty");

  // ActTime(u, a): duplicate (user, article) events summed.
  std::map<std::pair<std::string, std::string>, double> act_time;
  std::map<std::string, double> article_total;
  std::map<std::string, std::set<std::string>> viewers;
  for (const auto& ev : log.events) {
    act_time[{ev.user_id, ev.article_id}] += ev.active_time;
    article_total[ev.article_id] += ev.active_time;
    viewers[ev.article_id].insert(ev.user_id);
  }

  ScoreMap out;
  for (const auto& [key, t] : act_time) {
    const auto& article = key.second;
    double n_a = static_cast<double>(viewers[article].size());
    out[key] = t / article_total[article] * n_a;
  }
  return out;
}

ScoreMatrix rescale_per_user(const ScoreMap& raw) {
  if (raw.empty()) throw InputError("rescale_per_user: no scores");

  ScoreMatrix m;
  {
    std::set<std::string> users, articles;
    for (const auto& [key, v] : raw) {
      users.insert(key.first);
      articles.insert(key.second);
    }
    m.users.assign(users.begin(), users.end());
    m.articles.assign(articles.begin(), articles.end());
  }

  // Per-user min/max of the raw scores.
  std::map<std::string, std::pair<double, double>> range;
  for (const auto& [key, v] : raw) {
    auto [it, inserted] = range.emplace(key.first, std::make_pair(v, v));
    if (!inserted) {
      it->second.first = std::min(it->second.first, v);
      it->second.second = std::max(it->second.second, v);
    }
  }

  for (const auto& [key, v] : raw) {
    auto [lo, hi] = range[key.first];
    // Divide before scaling: the ratio is capped at 1.0 exactly, so the
    // result cannot creep past 10 by an ulp.
    double score = hi > lo ? 1.0 + 9.0 * ((v - lo) / (hi - lo)) : 5.5;
    m.observed[{m.row_of(key.first), m.col_of(key.second)}] = score;
  }
  return m;
}

void write_scores_csv(const ScoreMatrix& m, std::ostream& out) {
  out << "user_id,article_id,score\n";
  if (m.completed) {
    const auto& full = *m.completed;
    for (size_t u = 0; u < m.users.size(); ++u)
      for (size_t a = 0; a < m.articles.size(); ++a)
        out << m.users[u] << ',' << m.articles[a] << ','
            << fmt_double(full(static_cast<int>(u), static_cast<int>(a))) << '\n';
    return;
  }
  for (const auto& [key, v] : m.observed)
    out << m.users[key.first] << ',' << m.articles[key.second] << ','
        << fmt_double(v) << '\n';
}

namespace {

ScoreMap read_triplets(std::istream& in) {
  std::string line;
  size_t line_no = 0;
  ScoreMap entries;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (line_no == 1) {
      if (trim(line) != "user_id,article_id,score")
        throw InputError("scores CSV line 1: expected header 'user_id,article_id,score'");
      continue;
    }
    auto fields = split(line, ',');
    if (fields.size() != 3)
      throw InputError("scores CSV line " + std::to_string(line_no) +
                       ": expected 3 fields");
    std::string t = trim(fields[2]);
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size())
      throw InputError("scores CSV line " + std::to_string(line_no) +
                       ": score '" + t + "' is not a number");
    auto key = std::make_pair(trim(fields[0]), trim(fields[1]));
    if (key.first.empty() || key.second.empty())
      throw InputError("scores CSV line " + std::to_string(line_no) + ": empty id");
    if (!entries.emplace(key, v).second)
      throw InputError("scores CSV line " + std::to_string(line_no) +
                       ": duplicate entry for (" + key.first + ", " + key.second + ")");
  }
  if (entries.empty()) throw InputError("scores CSV: no entries");
  return entries;
}

ScoreMatrix shape_from(const ScoreMap& entries) {
  ScoreMatrix m;
  std::set<std::string> users, articles;
  for (const auto& [key, v] : entries) {
    users.insert(key.first);
    articles.insert(key.second);
  }
  m.users.assign(users.begin(), users.end());
  m.articles.assign(articles.begin(), articles.end());
  return m;
}

}  // namespace

ScoreMatrix read_scores_csv(std::istream& in) {
  ScoreMap entries = read_triplets(in);
  ScoreMatrix m = shape_from(entries);
  for (const auto& [key, v] : entries)
    m.observed[{m.row_of(key.first), m.col_of(key.second)}] = v;
  return m;
}

ScoreMatrix read_completed_csv(std::istream& in) {
  ScoreMap entries = read_triplets(in);
  ScoreMatrix m = shape_from(entries);
  size_t cells = m.users.size() * m.articles.size();
  if (entries.size() != cells) {
    std::ostringstream msg;
    msg << "completed scores CSV: expected a full " << m.users.size() << "x"
        << m.articles.size() << " grid (" << cells << " rows), got "
        << entries.size();
    throw InputError(msg.str());
  }
  Eigen::MatrixXd full(m.users.size(), m.articles.size());
  for (const auto& [key, v] : entries)
    full(m.row_of(key.first), m.col_of(key.second)) = v;
  m.completed = std::move(full);
  return m;
}

}  // namespace voterec
