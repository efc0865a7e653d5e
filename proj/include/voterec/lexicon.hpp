#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "voterec/types.hpp"

namespace voterec {

// Lowercases and splits on non-letter characters, keeping tokens of at least
// two letters. Understands UTF-8 Latin letters (Norwegian a-ring, slashed-o,
// ash included); anything else separates tokens.
std::vector<std::string> tokenize(std::string_view text);

// Class-conditional PMI over the pooled token stream of two labeled corpora:
//   pmi(w, c) = log2(P(w, c) / (P(w) P(c))).
// Words below min_count total occurrences are dropped; each side keeps its
// top_n words by PMI, a word landing only on its higher-PMI side and only
// with a positive PMI.
SeedLexicon build_lexicon(const std::vector<ArticleDoc>& left_corpus,
                          const std::vector<ArticleDoc>& right_corpus,
                          int top_n, int min_count);

// Majority of seed-word occurrences decides; ties and zero hits are Neutral.
ArticleLabel label_article(const ArticleDoc& doc, const SeedLexicon& lex);

// Token-level seed occurrences summed over the whole set (bias metric input).
std::pair<long, long> count_seed_hits(const std::vector<ArticleDoc>& docs,
                                      const SeedLexicon& lex);

// {"left": [{"word": ..., "pmi": ...}, ...], "right": [...]}
std::string lexicon_to_json(const SeedLexicon& lex);
SeedLexicon lexicon_from_json(const std::string& text);

// `article_id,label,left_hits,right_hits`
void write_labels_csv(const std::vector<ArticleLabel>& labels, std::ostream& out);
std::vector<ArticleLabel> read_labels_csv(std::istream& in);

}  // namespace voterec
