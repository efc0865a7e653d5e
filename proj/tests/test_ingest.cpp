#include <doctest.h>

#include <sstream>

#include "voterec/errors.hpp"
#include "voterec/ingest.hpp"

using namespace voterec;

namespace {

ParsedEvents parse_str(const std::string& text, EventFormat fmt = EventFormat::JsonLines) {
    std::istringstream in(text);
    return parse_events(in, fmt);
}

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("json lines happy path") {
    auto r = parse_str(
        R"({"userId": "u1", "documentId": "a1", "activeTime": 30})"
        "\n"
        R"({"userId": "u2", "documentId": "a1", "activeTime": 10.5})"
        "\n"
        R"({"userId": "u1", "documentId": "a2", "activeTime": 4})"
        "\n");
    CHECK(r.kept == 3);
    CHECK(r.dropped_zero == 0);
    CHECK(r.log.events.size() == 3);
    CHECK(r.log.users.size() == 2);
    CHECK(r.log.articles.size() == 2);
    CHECK(r.log.events[1].user_id == "u2");
    CHECK(r.log.events[1].active_time == doctest::Approx(10.5));
}

TEST_CASE("duplicate pairs are kept as separate events") {
    auto r = parse_str(
        R"({"userId": "u1", "documentId": "a1", "activeTime": 20})"
        "\n"
        R"({"userId": "u1", "documentId": "a1", "activeTime": 10})"
        "\n");
    CHECK(r.log.events.size() == 2);
    CHECK(r.log.users.size() == 1);
    CHECK(r.log.articles.size() == 1);
}

TEST_CASE("zero active time is dropped and counted") {
    auto r = parse_str(
        R"({"userId": "u1", "documentId": "a1", "activeTime": 0})"
        "\n"
        R"({"userId": "u2", "documentId": "a1", "activeTime": 7})"
        "\n");
    CHECK(r.kept == 1);
    CHECK(r.dropped_zero == 1);
    CHECK(r.log.events.size() == 1);
}

TEST_CASE("negative active time names the line") {
    CHECK_THROWS_WITH_AS(
        parse_str(R"({"userId": "u1", "documentId": "a1", "activeTime": 5})"
                  "\n"
                  R"({"userId": "u2", "documentId": "a1", "activeTime": -3})"
                  "\n"),
        doctest::Contains("line 2"), InputError);
}

TEST_CASE("malformed json and missing fields are input errors") {
    CHECK_THROWS_AS(parse_str("{not json}\n"), InputError);
    CHECK_THROWS_WITH_AS(parse_str(R"({"documentId": "a1", "activeTime": 5})" "\n"),
                         doctest::Contains("userId"), InputError);
    CHECK_THROWS_WITH_AS(parse_str(R"({"userId": "u1", "activeTime": 5})" "\n"),
                         doctest::Contains("documentId"), InputError);
    CHECK_THROWS_WITH_AS(parse_str(R"({"userId": "u1", "documentId": "a1"})" "\n"),
                         doctest::Contains("activeTime"), InputError);
    CHECK_THROWS_AS(
        parse_str(R"({"userId": "u1", "documentId": "a1", "activeTime": "x"})" "\n"),
        InputError);
    CHECK_THROWS_WITH_AS(
        parse_str(R"({"userId": "", "documentId": "a1", "activeTime": 5})" "\n"),
        doctest::Contains("empty user id"), InputError);
}

TEST_CASE("blank lines are skipped") {
    auto r = parse_str("\n" R"({"userId": "u1", "documentId": "a1", "activeTime": 5})" "\n\n");
    CHECK(r.kept == 1);
}

TEST_CASE("csv happy path with strict header") {
    auto r = parse_str("user_id,article_id,active_time\nu1,a1,30\nu2,a1,10\n", EventFormat::Csv);
    CHECK(r.kept == 2);
    CHECK(r.log.events[0].active_time == doctest::Approx(30.0));
}

TEST_CASE("csv rejects a wrong header and bad rows") {
    CHECK_THROWS_WITH_AS(parse_str("user,doc,time\nu1,a1,3\n", EventFormat::Csv),
                         doctest::Contains("header"), InputError);
    CHECK_THROWS_WITH_AS(
        parse_str("user_id,article_id,active_time\nu1,a1\n", EventFormat::Csv),
        doctest::Contains("line 2"), InputError);
    CHECK_THROWS_AS(
        parse_str("user_id,article_id,active_time\nu1,a1,abc\n", EventFormat::Csv),
        InputError);
}

TEST_CASE("event format names") {
    CHECK(parse_event_format("jsonl") == EventFormat::JsonLines);
    CHECK(parse_event_format("csv") == EventFormat::Csv);
    CHECK_THROWS_AS(parse_event_format("xml"), InputError);
    CHECK(std::string(event_format_name(EventFormat::JsonLines)) == "jsonl");
    CHECK(std::string(event_format_name(EventFormat::Csv)) == "csv");
}

TEST_CASE("events round-trip through json lines") {
    auto first = parse_str(
        R"({"userId": "u1", "documentId": "a1", "activeTime": 30.25})"
        "\n"
        R"({"userId": "u2", "documentId": "a2", "activeTime": 0.125})"
        "\n");
    std::ostringstream out;
    write_events(first.log, out);
    auto second = parse_str(out.str());
    CHECK(first.log == second.log);

    std::ostringstream again;
    write_events(second.log, again);
    CHECK(out.str() == again.str());
}

TEST_CASE("corpus parse, optional source, round-trip") {
    std::istringstream in(
        R"({"documentId": "a1", "body": "rød er best", "source": "avisa"})"
        "\n"
        R"({"documentId": "a2", "body": "høyre vinner"})"
        "\n");
    auto docs = parse_corpus(in);
    REQUIRE(docs.size() == 2);
    CHECK(docs[0].source == "avisa");
    CHECK(docs[1].source.empty());

    std::ostringstream out;
    write_corpus(docs, out);
    std::istringstream in2(out.str());
    auto docs2 = parse_corpus(in2);
    REQUIRE(docs2.size() == 2);
    CHECK(docs2[0].body == docs[0].body);
    CHECK(docs2[1].article_id == "a2");
}

TEST_CASE("corpus duplicate ids name both lines") {
    std::istringstream in(
        R"({"documentId": "a1", "body": "x y"})"
        "\n"
        R"({"documentId": "a1", "body": "z w"})"
        "\n");
    CHECK_THROWS_WITH_AS(parse_corpus(in), doctest::Contains("lines 1 and 2"), InputError);
}

TEST_CASE("corpus empty body names the article") {
    std::istringstream in(R"({"documentId": "a9", "body": "   "})" "\n");
    CHECK_THROWS_WITH_AS(parse_corpus(in), doctest::Contains("a9"), InputError);
}

TEST_CASE("parsing identical bytes twice gives identical logs") {
    const std::string text =
        R"({"userId": "u1", "documentId": "a1", "activeTime": 3})" "\n";
    CHECK(parse_str(text).log == parse_str(text).log);
}

}  // TEST_SUITE
