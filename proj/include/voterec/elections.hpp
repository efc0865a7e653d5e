#pragma once

#include <iosfwd>
#include <string>

#include "voterec/types.hpp"

namespace voterec {

// Election mapping: candidates are the articles, voters are the users, and
// each voter ranks candidates by descending completed score. All ties here
// and inside the rules break by ascending article id.
BallotProfile ballots_from_scores(const ScoreMatrix& completed);

// Top kappa candidates by first-place counts.
Committee sntv(const BallotProfile& profile, int kappa);

// Every voter approves their top kappa; winners by approval count.
Committee bloc(const BallotProfile& profile, int kappa);

// Winners by summed Borda score (m - 1 - position).
Committee k_borda(const BallotProfile& profile, int kappa);

// Multi-winner STV with Droop quota floor(n / (kappa + 1)) + 1 and fractional
// Gregory surplus transfers; the lowest tally is eliminated when nobody makes
// quota (tally ties eliminate the highest id).
Committee stv(const BallotProfile& profile, int kappa);

// Greedy Chamberlin-Courant: repeatedly add the candidate with the largest
// marginal representative satisfaction (a voter's satisfaction with a
// committee is the Borda score of their best representative in it).
Committee chamberlin_courant_greedy(const BallotProfile& profile, int kappa);

// Exact CC by enumerating kappa-subsets; guarded by C(m, kappa) <= 10^6.
Committee chamberlin_courant_exact(const BallotProfile& profile, int kappa);

// Greedy Monroe: kappa rounds, each electing the candidate whose most devoted
// ceil(n/kappa) (then floor(n/kappa)) still-unassigned voters add the most
// Borda satisfaction; those voters are assigned to it.
Committee monroe_greedy(const BallotProfile& profile, int kappa);

// Exact Monroe: enumerates kappa-subsets and solves the balanced voter
// assignment for each as a min-cost assignment; guarded like CC plus n <= 10.
Committee monroe_exact(const BallotProfile& profile, int kappa);

Committee elect(const BallotProfile& profile, Rule rule, int kappa);

// {"rule": ..., "kappa": ..., "winners": [...], "assignment": {...}?}
std::string committee_to_json(const Committee& committee);
Committee committee_from_json(const std::string& text);

}  // namespace voterec
