#pragma once

#include <string>
#include <vector>

#include "voterec/types.hpp"

namespace voterec {

// Knobs for the synthetic newsroom: articles are Left/Right with planted
// side-specific marker words; users get a latent side and spend more time on
// own-side articles, with `polarization` scaling how much more.
struct SynthConfig {
    int n_users = 200;
    int n_articles = 50;
    double left_fraction = 0.5;
    double polarization = 0.8;   // 0 = side-blind reading, 1 = strongest skew
    int seed_vocab_size = 20;    // planted marker words per side
    uint64_t rng_seed = 42;
};

struct SynthData {
    InteractionLog log;
    std::vector<ArticleDoc> corpus;        // article id order
    std::vector<ArticleLabel> truth;       // planted labels with marker counts
    std::vector<std::string> left_markers;
    std::vector<std::string> right_markers;
};

// Deterministic for a given config; same seed, same bytes.
SynthData generate(const SynthConfig& cfg);

}  // namespace voterec
