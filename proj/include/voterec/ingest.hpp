#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "voterec/types.hpp"

namespace voterec {

enum class EventFormat { JsonLines, Csv };

EventFormat parse_event_format(const std::string& name);  // "jsonl" | "csv"
const char* event_format_name(EventFormat format);

struct ParsedEvents {
  InteractionLog log;
  size_t kept = 0;
  size_t dropped_zero = 0;  // records discarded for active_time == 0
};

// Events, one record per line. JSON lines carry
// {"userId": ..., "documentId": ..., "activeTime": ...}; CSV requires the
// exact header `user_id,article_id,active_time`. Zero-time records are
// dropped, negative times and malformed lines are errors naming the line.
ParsedEvents parse_events(std::istream& in, EventFormat format);
ParsedEvents parse_events_file(const std::string& path, EventFormat format);

void write_events(const InteractionLog& log, std::ostream& out);  // json-lines

// Corpus json-lines: {"documentId": ..., "body": ..., "source": ...?}.
// Duplicate article ids and empty bodies are errors.
std::vector<ArticleDoc> parse_corpus(std::istream& in);
std::vector<ArticleDoc> parse_corpus_file(const std::string& path);

void write_corpus(const std::vector<ArticleDoc>& docs, std::ostream& out);

}  // namespace voterec
