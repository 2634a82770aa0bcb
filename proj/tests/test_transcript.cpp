#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wesr/taxonomy.hpp"
#include "wesr/transcript.hpp"

using namespace wesr;

namespace {
int tag_id(const char* name) { return taxonomy::lookup(name).id; }
std::vector<std::string> words(std::initializer_list<const char*> ws) {
    return {ws.begin(), ws.end()};
}
}  // namespace

TEST_CASE("tokenize: whitespace split") {
    CHECK(tokenize("hello world") == words({"hello", "world"}));
    CHECK(tokenize("") == words({}));
    CHECK(tokenize("   ") == words({}));
}

TEST_CASE("tokenize: CJK codepoints are single tokens") {
    CHECK(tokenize("好的那我们") == words({"好", "的", "那", "我", "们"}));
}

TEST_CASE("tokenize: lowercase + edge punctuation strip") {
    CHECK(tokenize("I wish you a Merry Christmas,") ==
          words({"i", "wish", "you", "a", "merry", "christmas"}));
}

TEST_CASE("tokenize: apostrophes retained word-internally") {
    CHECK(tokenize("can't stop") == words({"can't", "stop"}));
}

TEST_CASE("tokenize: latin run embedded in CJK stays whole") {
    auto toks = tokenize("我ok了");
    CHECK(toks == words({"我", "ok", "了"}));
}

TEST_CASE("tokenize: CJK punctuation dropped") {
    CHECK(tokenize("住手，快点住手。") ==
          words({"住", "手", "快", "点", "住", "手"}));
}

TEST_CASE("parse: canonical mixed example") {
    auto r = parse("<whispering> hello </whispering> [laughs]", ParseMode::Strict);
    const auto& t = r.transcript;
    CHECK(t.words == words({"hello"}));
    REQUIRE(t.spans.size() == 1);
    CHECK(t.spans[0] == SpanEvent{0, 0, tag_id("whispering")});
    REQUIRE(t.discrete.size() == 1);
    CHECK(t.discrete[0] == DiscreteEvent{1, tag_id("laughs")});
    CHECK(t.valid());
}

TEST_CASE("parse: tag-free input") {
    auto r = parse("hello world", ParseMode::Strict);
    CHECK(r.transcript.words == words({"hello", "world"}));
    CHECK(r.transcript.discrete.empty());
    CHECK(r.transcript.spans.empty());
}

TEST_CASE("parse: CJK mixed example with punctuation") {
    auto r = parse("<shouting>住手,快点住手</shouting>[giggle]那我走了。",
                   ParseMode::Strict);
    const auto& t = r.transcript;
    // 6 span characters + 4 tail characters; ASCII comma and 。 strip
    CHECK(t.words.size() == 10);
    REQUIRE(t.spans.size() == 1);
    CHECK(t.spans[0] == SpanEvent{0, 5, tag_id("shouting")});
    REQUIRE(t.discrete.size() == 1);
    CHECK(t.discrete[0] == DiscreteEvent{6, tag_id("giggle")});
}

TEST_CASE("parse: discrete crying alias maps to cry") {
    auto r = parse("[crying] ok", ParseMode::Strict);
    REQUIRE(r.transcript.discrete.size() == 1);
    CHECK(r.transcript.discrete[0].tag == tag_id("cry"));
}

TEST_CASE("parse: nested distinct spans accepted") {
    auto r = parse("<shouting> a <panting> b </panting> c </shouting>",
                   ParseMode::Strict);
    REQUIRE(r.transcript.spans.size() == 2);
    CHECK(r.transcript.spans[0] == SpanEvent{0, 2, tag_id("shouting")});
    CHECK(r.transcript.spans[1] == SpanEvent{1, 1, tag_id("panting")});
}

TEST_CASE("parse strict: rejects malformed input") {
    CHECK_THROWS_AS(parse("[sneeze] hi", ParseMode::Strict), ParseError);
    CHECK_THROWS_AS(parse("<whispering> hi", ParseMode::Strict), ParseError);
    CHECK_THROWS_AS(parse("hi </whispering>", ParseMode::Strict), ParseError);
    CHECK_THROWS_AS(parse("<crying> oh </shouting>", ParseMode::Strict), ParseError);
    CHECK_THROWS_AS(parse("<whispering></whispering> hi", ParseMode::Strict),
                    ParseError);
    CHECK_THROWS_AS(parse("wo[cough]rd", ParseMode::Strict), ParseError);
    // crossing spans
    CHECK_THROWS_AS(
        parse("<shouting> a <panting> b </shouting> c </panting>",
              ParseMode::Strict),
        ParseError);
    // same-tag reopen inside itself
    CHECK_THROWS_AS(
        parse("<shouting> a <shouting> b </shouting> c </shouting>",
              ParseMode::Strict),
        ParseError);
}

TEST_CASE("parse lenient: repairs and reports") {
    SUBCASE("unknown tag dropped") {
        auto r = parse("[sneeze] hi", ParseMode::Lenient);
        CHECK(r.transcript.words == words({"hi"}));
        CHECK(r.transcript.discrete.empty());
        REQUIRE(r.diagnostics.size() == 1);
        CHECK(r.diagnostics[0].kind == DiagnosticKind::UnknownTag);
    }
    SUBCASE("unclosed span auto-closed at end") {
        auto r = parse("<whispering> hi there", ParseMode::Lenient);
        REQUIRE(r.transcript.spans.size() == 1);
        CHECK(r.transcript.spans[0] == SpanEvent{0, 1, tag_id("whispering")});
        REQUIRE(r.diagnostics.size() == 1);
        CHECK(r.diagnostics[0].kind == DiagnosticKind::UnclosedSpan);
    }
    SUBCASE("close without open dropped") {
        auto r = parse("hi </whispering>", ParseMode::Lenient);
        CHECK(r.transcript.spans.empty());
        REQUIRE(r.diagnostics.size() == 1);
        CHECK(r.diagnostics[0].kind == DiagnosticKind::CloseWithoutOpen);
    }
    SUBCASE("empty span dropped") {
        auto r = parse("<whispering></whispering> hi", ParseMode::Lenient);
        CHECK(r.transcript.spans.empty());
        REQUIRE(r.diagnostics.size() == 1);
        CHECK(r.diagnostics[0].kind == DiagnosticKind::EmptySpan);
    }
    SUBCASE("word-split tag") {
        auto r = parse("wo[cough]rd", ParseMode::Lenient);
        REQUIRE(!r.diagnostics.empty());
        CHECK(r.diagnostics[0].kind == DiagnosticKind::MalformedDelimiter);
        CHECK(r.transcript.valid());
    }
}

TEST_CASE("serialize examples") {
    AnnotatedTranscript t;
    t.words = words({"hello"});
    t.discrete = {{1, tag_id("laughs")}};
    t.spans = {{0, 0, tag_id("whispering")}};
    t.language = Language::En;
    CHECK(serialize(t) == "<whispering> hello </whispering> [laughs]");

    AnnotatedTranscript empty;
    CHECK(serialize(empty) == "");

    AnnotatedTranscript c;
    c.words = words({"a", "b"});
    c.discrete = {{0, tag_id("cough")}};
    c.language = Language::En;
    CHECK(serialize(c) == "[cough] a b");
}

TEST_CASE("parse(serialize(t)) == t for valid transcripts") {
    AnnotatedTranscript t;
    t.words = words({"one", "two", "three", "four"});
    t.language = Language::En;
    t.discrete = {{0, tag_id("cough")}, {2, tag_id("laughs")},
                  {2, tag_id("sigh")}, {4, tag_id("cry")}};
    t.spans = {{0, 2, tag_id("shouting")}, {1, 1, tag_id("panting")},
               {3, 3, tag_id("whispering")}};
    auto r = parse(serialize(t), ParseMode::Strict);
    CHECK(r.transcript == t);

    AnnotatedTranscript zh;
    zh.words = words({"好", "的", "那", "我", "们"});
    zh.language = Language::Zh;
    zh.discrete = {{2, tag_id("giggle")}};
    zh.spans = {{0, 1, tag_id("crying")}};
    auto rz = parse(serialize(zh), ParseMode::Strict);
    CHECK(rz.transcript.words == zh.words);
    CHECK(rz.transcript.discrete == zh.discrete);
    CHECK(rz.transcript.spans == zh.spans);
}

TEST_CASE("strip_tags") {
    CHECK(strip_tags("<singing> I wish </singing>") == "I wish");
    CHECK(strip_tags("no tags here") == "no tags here");
    CHECK(strip_tags("[cough] ok [cough]") == "ok");
}

TEST_CASE("tokenize(strip_tags(s)) equals parse(s).words") {
    const char* cases[] = {
        "<whispering> hello </whispering> [laughs]",
        "<shouting>住手,快点住手</shouting>[giggle]那我走了。",
        "[cough] a b",
        "plain words only",
    };
    for (const char* s : cases) {
        auto t = parse(s, ParseMode::Strict).transcript;
        CHECK(tokenize(strip_tags(s)) == t.words);
    }
}

TEST_CASE("detect_language") {
    CHECK(detect_language("hello world") == Language::En);
    CHECK(detect_language("好的") == Language::Zh);
    CHECK(detect_language("那我ok了") == Language::Mixed);
}

TEST_CASE("validity checks") {
    AnnotatedTranscript t;
    t.words = words({"a", "b"});
    t.spans = {{0, 1, tag_id("crying")}};
    CHECK(t.valid());
    t.spans = {{1, 0, tag_id("crying")}};  // inverted
    CHECK_FALSE(t.valid());
    t.spans = {{0, 2, tag_id("crying")}};  // out of range
    CHECK_FALSE(t.valid());
    t.spans = {{0, 1, tag_id("crying")}, {1, 1, tag_id("crying")}};  // same-tag overlap
    CHECK_FALSE(t.valid());
    t.spans = {};
    t.discrete = {{3, tag_id("cough")}};  // gap out of range
    CHECK_FALSE(t.valid());
    t.discrete = {{2, tag_id("cough")}};
    CHECK(t.valid());
}
