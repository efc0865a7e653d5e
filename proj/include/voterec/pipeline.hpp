#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "voterec/config.hpp"
#include "voterec/types.hpp"

namespace voterec {

// Fixed artifact names inside a run directory. Every stage reads its inputs
// from the run directory and writes its outputs there, so stages compose the
// same whether driven one subcommand at a time or by run_pipeline.
namespace artifact {
inline constexpr const char* kConfig = "config.txt";
inline constexpr const char* kEvents = "events.jsonl";
inline constexpr const char* kCorpus = "corpus.jsonl";
inline constexpr const char* kLeftCorpus = "left_corpus.jsonl";
inline constexpr const char* kRightCorpus = "right_corpus.jsonl";
inline constexpr const char* kTruthLabels = "truth_labels.csv";
inline constexpr const char* kScores = "scores.csv";
inline constexpr const char* kCompleted = "completed.csv";
inline constexpr const char* kUserFactors = "user_factors.csv";
inline constexpr const char* kItemFactors = "item_factors.csv";
inline constexpr const char* kLexicon = "lexicon.json";
inline constexpr const char* kLabels = "labels.csv";
inline constexpr const char* kReportCsv = "report.csv";
inline constexpr const char* kReportMd = "report.md";

std::string committee_file(Rule rule);  // committee_<rule>.json
}  // namespace artifact

// out_dir/run-<config hash>; created if needed, config.txt (canonical form,
// out_dir excluded) written. The same config always lands in the same place.
std::filesystem::path prepare_run_dir(const PipelineConfig& cfg);

void stage_synth(const PipelineConfig& cfg, const std::filesystem::path& dir);
void stage_ingest(const PipelineConfig& cfg, const std::filesystem::path& dir);
void stage_score(const PipelineConfig& cfg, const std::filesystem::path& dir);
void stage_factorize(const PipelineConfig& cfg, const std::filesystem::path& dir);
void stage_elect(const PipelineConfig& cfg, const std::filesystem::path& dir);
void stage_elect_one(const PipelineConfig& cfg, const std::filesystem::path& dir, Rule rule);
void stage_lexicon(const PipelineConfig& cfg, const std::filesystem::path& dir);
void stage_label(const PipelineConfig& cfg, const std::filesystem::path& dir);
std::vector<FairnessReport> stage_evaluate(const PipelineConfig& cfg,
                                           const std::filesystem::path& dir);
void stage_report(const PipelineConfig& cfg, const std::filesystem::path& dir);

// All stages in order (synth replaces ingest when input.events is empty).
// Returns the report rows; artifacts land in prepare_run_dir(cfg).
std::vector<FairnessReport> run_pipeline(const PipelineConfig& cfg);

}  // namespace voterec
