#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "voterec/factorization.hpp"
#include "voterec/ingest.hpp"
#include "voterec/synth.hpp"
#include "voterec/types.hpp"

namespace voterec {

struct LexiconConfig {
    int top_n = 25;
    int min_count = 3;
};

struct PathsConfig {
    std::string events;  // empty means: generate synthetic data instead
    EventFormat events_format = EventFormat::JsonLines;
    std::string corpus;
    std::string left_corpus;   // lexicon training corpora; synthetic runs
    std::string right_corpus;  // derive them from planted labels
    std::string out_dir = "runs";
};

// Everything a full run needs. All randomness (synthesis and factorization
// init) is driven by the single rng_seed.
struct PipelineConfig {
    int kappa = 10;
    uint64_t rng_seed = 42;
    std::vector<Rule> rules = {Rule::Sntv, Rule::KBorda, Rule::Bloc,
                               Rule::Stv,  Rule::Cc,     Rule::Monroe};
    FactorizationConfig factorization;
    LexiconConfig lexicon;
    SynthConfig synth;
    PathsConfig paths;
};

PipelineConfig default_config();

// Flat `key = value` lines, `#` starts a comment, dotted keys for sections
// (e.g. factorization.latent_dim). Unknown keys are errors.
PipelineConfig parse_config(std::istream& in);
PipelineConfig load_config(const std::string& path);

void validate_config(const PipelineConfig& cfg);

// Every key in fixed order, doubles at full precision; out_dir is excluded so
// the hash names the computation, not where it lands.
std::string canonical_config(const PipelineConfig& cfg);
uint64_t config_hash(const PipelineConfig& cfg);
std::string run_dir_name(const PipelineConfig& cfg);  // "run-" + 16 hex digits

}  // namespace voterec
