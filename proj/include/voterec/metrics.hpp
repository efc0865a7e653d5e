#pragma once

#include <iosfwd>
#include <vector>

#include "voterec/types.hpp"

namespace voterec {

// Mean over users of |W ∩ Top-kappa_u| / kappa, where Top-kappa_u is the
// user's kappa best articles under the completed matrix (ties by ascending
// article id, the same order ballots use).
double satisfaction(const Committee& committee, const ScoreMatrix& scores, int kappa);

// rho = total active time on Left-labeled articles / total on Right-labeled.
// Neutral and unlabeled articles contribute to neither sum.
double reference_bias(const InteractionLog& log, const std::vector<ArticleLabel>& labels);

// (-left + rho*right) / (left + rho*right): -1 all-left ... +1 all-right,
// 0 where consumption matches the platform's reference ratio.
double bias(long left_count, long right_count, double rho);

// `rule,kappa,satisfaction,bias,rho,left_count,right_count`
void write_report_csv(const std::vector<FairnessReport>& rows, std::ostream& out);
std::vector<FairnessReport> read_report_csv(std::istream& in);

// | Election Method | Satisfaction | Bias | with values rounded to 3 places.
void write_report_markdown(const std::vector<FairnessReport>& rows, std::ostream& out);

}  // namespace voterec
