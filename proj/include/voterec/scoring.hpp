#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>

#include "voterec/types.hpp"

namespace voterec {

// (user_id, article_id) -> value, iterated user-major.
using ScoreMap = std::map<std::pair<std::string, std::string>, double>;

// Raw score of a pair: the user's share of the article's total active time,
// scaled by the article's viewer count. Active times of duplicate events are
// summed first. Column sums equal the viewer count of the article.
ScoreMap raw_scores(const InteractionLog& log);

// Affinely maps each user's raw scores onto [1, 10] independently; a user
// whose raw scores are all equal (including a single observation) maps to the
// midpoint 5.5.
ScoreMatrix rescale_per_user(const ScoreMap& raw);

// Sparse triplet CSV `user_id,article_id,score`. Writes observed entries only
// unless the matrix is completed, in which case every cell is written.
void write_scores_csv(const ScoreMatrix& m, std::ostream& out);
ScoreMatrix read_scores_csv(std::istream& in);            // observed, sparse
ScoreMatrix read_completed_csv(std::istream& in);         // requires full grid

}  // namespace voterec
