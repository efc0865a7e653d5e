#include "voterec/lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>

#include <json.hpp>

#include "voterec/errors.hpp"
#include "voterec/util.hpp"

namespace voterec {

namespace {

// Letters: ASCII, Latin-1 supplement (minus the multiplication/division
// signs), Latin Extended-A/B. Covers Norwegian text; everything else splits.
bool is_letter(uint32_t cp) {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
    if (cp >= 0xC0 && cp <= 0xFF) return cp != 0xD7 && cp != 0xF7;
    return cp >= 0x100 && cp <= 0x24F;
}

// ASCII and Latin-1 have a uniform +0x20 case offset; the extended ranges are
// left as-is (our corpora are lowercase there anyway).
uint32_t lower(uint32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
    return cp;
}

void append_utf8(std::string& s, uint32_t cp) {
    if (cp < 0x80) {
        s.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        s.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        s.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        s.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Decodes one UTF-8 sequence starting at i; on malformed input consumes a
// single byte and reports it as a non-letter.
uint32_t decode_utf8(std::string_view text, size_t& i) {
    const auto byte = [&](size_t k) { return static_cast<unsigned char>(text[k]); };
    unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        i += 1;
        return b0;
    }
    auto cont = [&](size_t k) {
        return k < text.size() && (byte(k) & 0xC0) == 0x80;
    };
    if (b0 >= 0xC2 && b0 <= 0xDF && cont(i + 1)) {
        uint32_t cp = (uint32_t(b0 & 0x1F) << 6) | (byte(i + 1) & 0x3F);
        i += 2;
        return cp;
    }
    if (b0 >= 0xE0 && b0 <= 0xEF && cont(i + 1) && cont(i + 2)) {
        uint32_t cp = (uint32_t(b0 & 0x0F) << 12) |
                      (uint32_t(byte(i + 1) & 0x3F) << 6) | (byte(i + 2) & 0x3F);
        if (cp >= 0x800) {  // reject overlong forms
            i += 3;
            return cp;
        }
    }
    if (b0 >= 0xF0 && b0 <= 0xF4 && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
        i += 4;
        return 0x10000;  // supplementary planes hold no letters we accept
    }
    i += 1;
    return 0xFFFD;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    int current_len = 0;
    auto flush = [&] {
        if (current_len >= 2) tokens.push_back(current);
        current.clear();
        current_len = 0;
    };
    size_t i = 0;
    while (i < text.size()) {
        uint32_t cp = decode_utf8(text, i);
        if (is_letter(cp)) {
            append_utf8(current, lower(cp));
            ++current_len;
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

namespace {

struct ClassCounts {
    long left = 0;
    long right = 0;
};

void count_tokens(const std::vector<ArticleDoc>& docs, bool into_left,
                  std::map<std::string, ClassCounts>& counts, long& class_total) {
    for (const auto& doc : docs) {
        for (auto& tok : tokenize(doc.body)) {
            auto& c = counts[tok];
            (into_left ? c.left : c.right) += 1;
            class_total += 1;
        }
    }
}

}  // namespace

SeedLexicon build_lexicon(const std::vector<ArticleDoc>& left_corpus,
                          const std::vector<ArticleDoc>& right_corpus,
                          int top_n, int min_count) {
    if (left_corpus.empty()) throw InputError("build_lexicon: left corpus is empty");
    if (right_corpus.empty()) throw InputError("build_lexicon: right corpus is empty");
    if (top_n < 1) throw InputError("build_lexicon: top_n must be at least 1");
    if (min_count < 1) throw InputError("build_lexicon: min_count must be at least 1");

    std::map<std::string, ClassCounts> counts;
    long n_left = 0;
    long n_right = 0;
    count_tokens(left_corpus, true, counts, n_left);
    count_tokens(right_corpus, false, counts, n_right);
    if (n_left == 0) throw InputError("build_lexicon: left corpus has no tokens");
    if (n_right == 0) throw InputError("build_lexicon: right corpus has no tokens");
    const double n_total = static_cast<double>(n_left + n_right);

    // pmi(w, c) = log2( count(w,c) * N / (count(w) * N_c) ); a word is a
    // candidate only for the side where its PMI is higher, and only if that
    // PMI is positive. Equal PMI on both sides forces pmi = 0, so the two
    // conditions never conflict.
    std::vector<SeedWord> left;
    std::vector<SeedWord> right;
    for (const auto& [word, c] : counts) {
        const long total = c.left + c.right;
        if (total < min_count) continue;
        const double pmi_left =
            c.left > 0 ? std::log2(double(c.left) * n_total / (double(total) * double(n_left)))
                       : -std::numeric_limits<double>::infinity();
        const double pmi_right =
            c.right > 0 ? std::log2(double(c.right) * n_total / (double(total) * double(n_right)))
                        : -std::numeric_limits<double>::infinity();
        if (pmi_left > pmi_right && pmi_left > 0.0) {
            left.push_back({word, pmi_left});
        } else if (pmi_right > pmi_left && pmi_right > 0.0) {
            right.push_back({word, pmi_right});
        }
    }

    auto keep_top = [top_n](std::vector<SeedWord>& side) {
        std::sort(side.begin(), side.end(), [](const SeedWord& a, const SeedWord& b) {
            if (a.pmi != b.pmi) return a.pmi > b.pmi;
            return a.word < b.word;
        });
        if (side.size() > static_cast<size_t>(top_n)) side.resize(top_n);
    };
    keep_top(left);
    keep_top(right);

    SeedLexicon lex;
    lex.left = std::move(left);
    lex.right = std::move(right);
    lex.top_n = top_n;
    lex.underfull = lex.left.size() < static_cast<size_t>(top_n) ||
                    lex.right.size() < static_cast<size_t>(top_n);
    return lex;
}

namespace {

std::set<std::string> word_set(const std::vector<SeedWord>& seeds) {
    std::set<std::string> s;
    for (const auto& sw : seeds) s.insert(sw.word);
    return s;
}

}  // namespace

ArticleLabel label_article(const ArticleDoc& doc, const SeedLexicon& lex) {
    if (lex.left.empty() && lex.right.empty())
        throw InputError("label_article: lexicon is empty on both sides");
    const auto left_words = word_set(lex.left);
    const auto right_words = word_set(lex.right);
    ArticleLabel out;
    out.article_id = doc.article_id;
    for (const auto& tok : tokenize(doc.body)) {
        if (left_words.count(tok)) out.left_hits += 1;
        if (right_words.count(tok)) out.right_hits += 1;
    }
    if (out.left_hits > out.right_hits) {
        out.label = Side::Left;
    } else if (out.right_hits > out.left_hits) {
        out.label = Side::Right;
    } else {
        out.label = Side::Neutral;
    }
    return out;
}

std::pair<long, long> count_seed_hits(const std::vector<ArticleDoc>& docs,
                                      const SeedLexicon& lex) {
    const auto left_words = word_set(lex.left);
    const auto right_words = word_set(lex.right);
    long left = 0;
    long right = 0;
    for (const auto& doc : docs) {
        for (const auto& tok : tokenize(doc.body)) {
            if (left_words.count(tok)) left += 1;
            if (right_words.count(tok)) right += 1;
        }
    }
    return {left, right};
}

std::string lexicon_to_json(const SeedLexicon& lex) {
    nlohmann::ordered_json j;
    auto side_array = [](const std::vector<SeedWord>& seeds) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& sw : seeds) {
            nlohmann::ordered_json e;
            e["word"] = sw.word;
            e["pmi"] = sw.pmi;
            arr.push_back(e);
        }
        return arr;
    };
    j["left"] = side_array(lex.left);
    j["right"] = side_array(lex.right);
    return j.dump(2) + "\n";
}

SeedLexicon lexicon_from_json(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("lexicon: invalid JSON: ") + e.what());
    }
    auto read_side = [](const nlohmann::ordered_json& j, const char* key) {
        if (!j.contains(key) || !j[key].is_array())
            throw InputError(std::string("lexicon: missing \"") + key + "\" array");
        std::vector<SeedWord> seeds;
        for (const auto& e : j[key]) {
            if (!e.contains("word") || !e["word"].is_string() || !e.contains("pmi") ||
                !e["pmi"].is_number())
                throw InputError("lexicon: each seed needs a \"word\" string and a \"pmi\" number");
            seeds.push_back({e["word"].get<std::string>(), e["pmi"].get<double>()});
        }
        return seeds;
    };
    SeedLexicon lex;
    lex.left = read_side(j, "left");
    lex.right = read_side(j, "right");
    lex.top_n = static_cast<int>(std::max(lex.left.size(), lex.right.size()));
    lex.underfull = false;
    return lex;
}

void write_labels_csv(const std::vector<ArticleLabel>& labels, std::ostream& out) {
    out << "article_id,label,left_hits,right_hits\n";
    for (const auto& l : labels) {
        out << l.article_id << ',' << side_name(l.label) << ',' << l.left_hits << ','
            << l.right_hits << '\n';
    }
}

std::vector<ArticleLabel> read_labels_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != "article_id,label,left_hits,right_hits")
        throw InputError("labels: expected header article_id,label,left_hits,right_hits");
    std::vector<ArticleLabel> labels;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto parts = split(line, ',');
        if (parts.size() != 4)
            throw InputError("labels line " + std::to_string(line_no) + ": expected 4 fields");
        ArticleLabel l;
        l.article_id = trim(parts[0]);
        l.label = parse_side(trim(parts[1]));
        try {
            l.left_hits = std::stol(trim(parts[2]));
            l.right_hits = std::stol(trim(parts[3]));
        } catch (const std::exception&) {
            throw InputError("labels line " + std::to_string(line_no) + ": bad hit count");
        }
        if (l.left_hits < 0 || l.right_hits < 0)
            throw InputError("labels line " + std::to_string(line_no) + ": negative hit count");
        labels.push_back(std::move(l));
    }
    return labels;
}

}  // namespace voterec
