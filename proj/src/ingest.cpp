#include "voterec/ingest.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "voterec/errors.hpp"
#include "voterec/util.hpp"

namespace voterec {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail_line(const char* what, size_t line_no, const std::string& detail) {
  std::ostringstream msg;
  msg << what << " line " << line_no << ": " << detail;
  throw InputError(msg.str());
}

std::string json_string_field(const ordered_json& obj, const char* key, size_t line_no,
                              const char* what) {
  auto it = obj.find(key);
  if (it == obj.end()) fail_line(what, line_no, std::string("missing field \"") + key + "\"");
  if (!it->is_string()) fail_line(what, line_no, std::string("field \"") + key + "\" is not a string");
  return it->get<std::string>();
}

InteractionEvent parse_event_json(const std::string& line, size_t line_no) {
  ordered_json obj;
  try {
    obj = ordered_json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    fail_line("events", line_no, e.what());
  }
  if (!obj.is_object()) fail_line("events", line_no, "expected a JSON object");
  InteractionEvent ev;
  ev.user_id = json_string_field(obj, "userId", line_no, "events");
  ev.article_id = json_string_field(obj, "documentId", line_no, "events");
  auto it = obj.find("activeTime");
  if (it == obj.end()) fail_line("events", line_no, "missing field \"activeTime\"");
  if (!it->is_number()) fail_line("events", line_no, "field \"activeTime\" is not a number");
  ev.active_time = it->get<double>();
  return ev;
}

InteractionEvent parse_event_csv(const std::string& line, size_t line_no) {
  auto fields = split(line, ',');
  if (fields.size() != 3)
    fail_line("events", line_no, "expected 3 comma-separated fields, got " +
                                     std::to_string(fields.size()));
  InteractionEvent ev;
  ev.user_id = trim(fields[0]);
  ev.article_id = trim(fields[1]);
  std::string t = trim(fields[2]);
  char* end = nullptr;
  ev.active_time = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    fail_line("events", line_no, "active_time '" + t + "' is not a number");
  return ev;
}

void validate_event(const InteractionEvent& ev, size_t line_no) {
  if (ev.user_id.empty()) fail_line("events", line_no, "empty user id");
  if (ev.article_id.empty()) fail_line("events", line_no, "empty article id");
  if (!(ev.active_time >= 0.0))
    fail_line("events", line_no,
              "negative active_time " + fmt_double(ev.active_time));
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file: " + path);
  return in;
}

}  // namespace

EventFormat parse_event_format(const std::string& name) {
  if (name == "jsonl") return EventFormat::JsonLines;
  if (name == "csv") return EventFormat::Csv;
  throw InputError("unknown events format '" + name + "' (expected jsonl or csv)");
}

const char* event_format_name(EventFormat format) {
  return format == EventFormat::JsonLines ? "jsonl" : "csv";
}

ParsedEvents parse_events(std::istream& in, EventFormat format) {
  ParsedEvents out;
  std::string line;
  size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (format == EventFormat::Csv && !saw_header) {
      saw_header = true;
      if (trim(line) != "user_id,article_id,active_time")
        fail_line("events", line_no,
                  "expected CSV header 'user_id,article_id,active_time'");
      continue;
    }
    if (trim(line).empty()) continue;
    InteractionEvent ev = format == EventFormat::JsonLines
                              ? parse_event_json(line, line_no)
                              : parse_event_csv(line, line_no);
    validate_event(ev, line_no);
    if (ev.active_time == 0.0) {
      ++out.dropped_zero;
      continue;
    }
    ++out.kept;
    out.log.add(std::move(ev));
  }
  return out;
}

ParsedEvents parse_events_file(const std::string& path, EventFormat format) {
  auto in = open_input(path);
  return parse_events(in, format);
}

void write_events(const InteractionLog& log, std::ostream& out) {
  for (const auto& ev : log.events) {
    ordered_json obj;
    obj["userId"] = ev.user_id;
    obj["documentId"] = ev.article_id;
    obj["activeTime"] = ev.active_time;
    out << obj.dump() << '\n';
  }
}

std::vector<ArticleDoc> parse_corpus(std::istream& in) {
  std::vector<ArticleDoc> docs;
  std::map<std::string, size_t> first_line_of;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    ordered_json obj;
    try {
      obj = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      fail_line("corpus", line_no, e.what());
    }
    if (!obj.is_object()) fail_line("corpus", line_no, "expected a JSON object");
    ArticleDoc doc;
    doc.article_id = json_string_field(obj, "documentId", line_no, "corpus");
    doc.body = json_string_field(obj, "body", line_no, "corpus");
    if (auto it = obj.find("source"); it != obj.end() && it->is_string())
      doc.source = it->get<std::string>();
    if (doc.article_id.empty()) fail_line("corpus", line_no, "empty article id");
    if (trim(doc.body).empty())
      fail_line("corpus", line_no, "empty body for article '" + doc.article_id + "'");
    auto [it, inserted] = first_line_of.emplace(doc.article_id, line_no);
    if (!inserted) {
      std::ostringstream msg;
      msg << "corpus: duplicate article id '" << doc.article_id << "' on lines "
          << it->second << " and " << line_no;
      throw InputError(msg.str());
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<ArticleDoc> parse_corpus_file(const std::string& path) {
  auto in = open_input(path);
  return parse_corpus(in);
}

void write_corpus(const std::vector<ArticleDoc>& docs, std::ostream& out) {
  for (const auto& doc : docs) {
    ordered_json obj;
    obj["documentId"] = doc.article_id;
    obj["body"] = doc.body;
    if (!doc.source.empty()) obj["source"] = doc.source;
    out << obj.dump() << '\n';
  }
}

}  // namespace voterec
