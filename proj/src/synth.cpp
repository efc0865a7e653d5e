#include "voterec/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "voterec/errors.hpp"
#include "voterec/util.hpp"

namespace voterec {

namespace {

constexpr double kMarkerRate = 0.25;    // fraction of body tokens that are markers
constexpr int kBodyTokens = 80;
constexpr int kFillerVocab = 150;
constexpr double kBaseMeanSeconds = 30.0;
constexpr int kMaxReadsPerUser = 12;
constexpr double kRereadProb = 0.1;     // chance of a second event for a pair

// Three lowercase letters: enough for any vocabulary we plant.
std::string base26(int i) {
    std::string s(3, 'a');
    s[0] = static_cast<char>('a' + (i / 676) % 26);
    s[1] = static_cast<char>('a' + (i / 26) % 26);
    s[2] = static_cast<char>('a' + i % 26);
    return s;
}

std::string padded_id(char prefix, int i, int width) {
    std::string digits = std::to_string(i);
    std::string s(1, prefix);
    s.append(width > static_cast<int>(digits.size()) ? width - digits.size() : 0, '0');
    s += digits;
    return s;
}

int id_width(int n) {
    int w = 1;
    for (int v = n - 1; v >= 10; v /= 10) ++w;
    return w;
}

}  // namespace

SynthData generate(const SynthConfig& cfg) {
    if (cfg.n_users < 1) throw InputError("synth: n_users must be at least 1");
    if (cfg.n_articles < 1) throw InputError("synth: n_articles must be at least 1");
    if (cfg.left_fraction < 0.0 || cfg.left_fraction > 1.0)
        throw InputError("synth: left_fraction must lie in [0, 1]");
    if (cfg.polarization < 0.0 || cfg.polarization > 1.0)
        throw InputError("synth: polarization must lie in [0, 1]");
    if (cfg.seed_vocab_size < 1) throw InputError("synth: seed_vocab_size must be at least 1");

    std::mt19937_64 rng(cfg.rng_seed);
    SynthData out;

    for (int i = 0; i < cfg.seed_vocab_size; ++i) {
        out.left_markers.push_back("lv" + base26(i));
        out.right_markers.push_back("rh" + base26(i));
    }
    std::vector<std::string> fillers;
    for (int i = 0; i < kFillerVocab; ++i) fillers.push_back("fz" + base26(i));

    // Article sides: exactly round(left_fraction * n) Left, shuffled so side
    // does not correlate with id order.
    const int n_left = static_cast<int>(std::lround(cfg.left_fraction * cfg.n_articles));
    std::vector<Side> sides(cfg.n_articles, Side::Right);
    std::fill(sides.begin(), sides.begin() + n_left, Side::Left);
    for (int i = cfg.n_articles - 1; i > 0; --i) {
        int j = static_cast<int>(uniform_below(rng, static_cast<uint64_t>(i) + 1));
        std::swap(sides[i], sides[static_cast<size_t>(j)]);
    }

    const int aw = id_width(cfg.n_articles);
    const int uw = id_width(cfg.n_users);

    for (int a = 0; a < cfg.n_articles; ++a) {
        const auto& own =
            sides[a] == Side::Left ? out.left_markers : out.right_markers;
        std::string body;
        long planted = 0;
        for (int t = 0; t < kBodyTokens; ++t) {
            if (t > 0) body += ' ';
            if (uniform01(rng) < kMarkerRate) {
                body += own[uniform_below(rng, own.size())];
                ++planted;
            } else {
                body += fillers[uniform_below(rng, fillers.size())];
            }
        }
        ArticleDoc doc;
        doc.article_id = padded_id('a', a, aw);
        doc.body = std::move(body);
        doc.source = sides[a] == Side::Left ? "leftpress" : "rightpress";
        out.corpus.push_back(std::move(doc));

        ArticleLabel truth;
        truth.article_id = out.corpus.back().article_id;
        truth.left_hits = sides[a] == Side::Left ? planted : 0;
        truth.right_hits = sides[a] == Side::Right ? planted : 0;
        truth.label = planted == 0          ? Side::Neutral
                      : sides[a] == Side::Left ? Side::Left
                                               : Side::Right;
        out.truth.push_back(std::move(truth));
    }

    // Each user reads a fixed-size sample of distinct articles; active time is
    // exponential with the mean boosted for own-side articles.
    const int reads = std::min(cfg.n_articles, kMaxReadsPerUser);
    const double boosted = kBaseMeanSeconds * (1.0 + 2.0 * cfg.polarization);
    std::vector<int> deck(cfg.n_articles);
    for (int u = 0; u < cfg.n_users; ++u) {
        const Side user_side = uniform01(rng) < 0.5 ? Side::Left : Side::Right;
        const std::string user_id = padded_id('u', u, uw);
        std::iota(deck.begin(), deck.end(), 0);
        for (int r = 0; r < reads; ++r) {
            int j = r + static_cast<int>(uniform_below(
                            rng, static_cast<uint64_t>(cfg.n_articles - r)));
            std::swap(deck[r], deck[j]);
            const int a = deck[r];
            const double mean = sides[a] == user_side ? boosted : kBaseMeanSeconds;
            InteractionEvent ev;
            ev.user_id = user_id;
            ev.article_id = padded_id('a', a, aw);
            ev.active_time = exponential(rng, mean);
            out.log.add(ev);
            if (uniform01(rng) < kRereadProb) {
                ev.active_time = exponential(rng, mean);
                out.log.add(ev);
            }
        }
    }

    return out;
}

}  // namespace voterec
