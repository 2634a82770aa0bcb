#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "wesr/corpus.hpp"
#include "wesr/report.hpp"

using namespace wesr;

namespace {
int tag_id(const char* name) { return taxonomy::lookup(name).id; }
}

TEST_CASE("load_manifest: well-formed file") {
    std::istringstream in(
        R"({"id":"u1","text":"[cough] ok","language":"en"})" "\n"
        R"({"id":"u2","text":"<crying> 好的 </crying>","language":"zh","duration_seconds":1.5})" "\n");
    auto entries = load_manifest(in, "mem");
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].id == "u1");
    CHECK(entries[1].language == Language::Zh);
    REQUIRE(entries[1].duration_seconds.has_value());
    CHECK(*entries[1].duration_seconds == doctest::Approx(1.5));
}

TEST_CASE("load_manifest: duplicate id rejected") {
    std::istringstream in(
        R"({"id":"u1","text":"ok"})" "\n"
        R"({"id":"u1","text":"ok again"})" "\n");
    CHECK_THROWS_AS(load_manifest(in, "mem"), DuplicateIdError);
}

TEST_CASE("load_manifest: schema failure carries line number") {
    std::istringstream in(
        R"({"id":"u1","text":"ok"})" "\n"
        R"({"id":"u2"})" "\n");
    try {
        load_manifest(in, "mem");
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("load_manifest: strict parse failures collected with ids") {
    std::istringstream in(
        R"({"id":"u1","text":"<crying> oh </shouting>"})" "\n"
        R"({"id":"u2","text":"fine"})" "\n"
        R"({"id":"u3","text":"[sneeze] nope"})" "\n");
    try {
        load_manifest(in, "mem");
        FAIL("expected CorpusParseError");
    } catch (const CorpusParseError& e) {
        REQUIRE(e.ids.size() == 2);
        CHECK(e.ids[0].find("u1") != std::string::npos);
        CHECK(e.ids[1].find("u3") != std::string::npos);
    }
}

TEST_CASE("load_hypotheses") {
    std::istringstream in(
        R"({"id":"a","text":"one"})" "\n"
        "\n"
        R"({"id":"b","text":"two"})" "\n"
        R"({"id":"c","text":"[sneeze] lenient later"})" "\n");
    auto hyps = load_hypotheses(in, "mem");
    CHECK(hyps.size() == 3);  // malformed tags deferred to scoring
    CHECK(hyps.at("b") == "two");

    std::istringstream missing(R"({"id":"a"})" "\n");
    CHECK_THROWS_AS(load_hypotheses(missing, "mem"), SchemaError);
    std::istringstream dup(
        R"({"id":"a","text":"x"})" "\n" R"({"id":"a","text":"y"})" "\n");
    CHECK_THROWS_AS(load_hypotheses(dup, "mem"), DuplicateIdError);
}

TEST_CASE("compute_stats: hand-counted toy utterance") {
    std::vector<ManifestEntry> entries(1);
    entries[0].id = "u1";
    entries[0].text = "<crying> a </crying> [sobbing] [sobbing]";
    entries[0].language = Language::En;
    auto s = compute_stats(entries);
    CHECK(s.utterances == 1);
    CHECK(s.total_occurrences == 3);
    CHECK(s.total_tags.buckets == std::array<long long, 3>{0, 0, 1});
    CHECK(s.unique_tags.buckets == std::array<long long, 3>{0, 1, 0});
    CHECK(s.continuous_share() == doctest::Approx(1.0 / 3.0));
    CHECK(s.per_tag.at(tag_id("sobbing")) == 2);
    CHECK(s.per_tag.at(tag_id("crying")) == 1);
}

TEST_CASE("compute_stats: empty manifest is all zero") {
    auto s = compute_stats({});
    CHECK(s.utterances == 0);
    CHECK(s.total_occurrences == 0);
    CHECK(s.total_tags.total() == 0);
}

TEST_CASE("compute_stats: tagless utterances excluded from histograms") {
    std::vector<ManifestEntry> entries(2);
    entries[0] = {"u1", "plain words", Language::En, {}, {}, {}};
    entries[1] = {"u2", "[cough] ok", Language::En, {}, {}, {}};
    auto s = compute_stats(entries);
    CHECK(s.entries == 2);
    CHECK(s.utterances == 1);
    CHECK(s.total_tags.total() == 1);
}

TEST_CASE("compute_stats: idempotent under serialize-reparse") {
    std::vector<ManifestEntry> entries(2);
    entries[0] = {"u1", "<crying> a b </crying> [cough]", Language::En, {}, {}, {}};
    entries[1] = {"u2", "[laughs] x [laughs]", Language::En, {}, {}, {}};
    auto s1 = compute_stats(entries);
    for (auto& e : entries)
        e.text = serialize(parse(e.text, ParseMode::Strict).transcript);
    auto s2 = compute_stats(entries);
    CHECK(s1.total_occurrences == s2.total_occurrences);
    CHECK(s1.total_tags.buckets == s2.total_tags.buckets);
    CHECK(s1.unique_tags.buckets == s2.unique_tags.buckets);
    CHECK(s1.per_tag == s2.per_tag);
}

TEST_CASE("normalize_external: mapped, dropped, passthrough") {
    auto mapping = ExternalMapping::defaults();
    std::vector<ManifestEntry> records(3);
    records[0] = {"r1", "[laugh] oh no", Language::En, {}, {}, {}};
    records[1] = {"r2", "[tsk] fine", Language::En, {}, {}, {}};
    records[2] = {"r3", "[sigh] well", Language::En, {}, {}, {}};

    SUBCASE("NonverbalTTS laugh becomes laughs") {
        auto out = normalize_external(Dataset::NonverbalTTS,
                                      {records[0], records[2]}, mapping);
        REQUIRE(out.entries.size() == 2);
        CHECK(out.entries[0].text == "[laughs] oh no");
        CHECK(out.entries[1].text == "[sigh] well");
        CHECK(out.excluded.empty());
        for (const auto& e : out.entries)
            CHECK_NOTHROW(parse(e.text, ParseMode::Strict));
    }
    SUBCASE("Synparaspeech tsk is excluded with a report line") {
        auto out = normalize_external(Dataset::Synparaspeech,
                                      {records[1], records[2]}, mapping);
        REQUIRE(out.entries.size() == 1);
        CHECK(out.entries[0].id == "r3");
        REQUIRE(out.excluded.size() == 1);
        CHECK(out.excluded[0].id == "r2");
        CHECK(out.excluded[0].raw_tag == "tsk");
        CHECK(out.excluded[0].reason == "outside_taxonomy");
    }
    SUBCASE("out-of-inventory raw tag drops the record") {
        std::vector<ManifestEntry> bad(1);
        bad[0] = {"rx", "[zorp] hm", Language::En, {}, {}, {}};
        auto out = normalize_external(Dataset::SMIIPNV, bad, mapping);
        CHECK(out.entries.empty());
        REQUIRE(out.excluded.size() == 1);
        CHECK(out.excluded[0].reason == "unknown_external_tag");
    }
    SUBCASE("conservation: emitted + dropped == input") {
        auto out = normalize_external(Dataset::Synparaspeech, records, mapping);
        // r1 "[laugh]" is in the Synparaspeech inventory too
        CHECK(out.entries.size() + out.excluded.size() == records.size());
    }
}

TEST_CASE("bench fixture reproduces the published composition") {
    auto entries = load_manifest(WESR_DATA_DIR "/wesr_bench_stats_fixture.jsonl");
    auto s = compute_stats(entries);
    CHECK(s.utterances == 927);
    CHECK(s.total_tags.buckets == std::array<long long, 3>{657, 184, 86});
    CHECK(s.unique_tags.buckets == std::array<long long, 3>{699, 180, 48});
    CHECK(s.total_occurrences == 1918);
    CHECK(s.continuous_occurrences == 1128);
    CHECK(s.discrete_occurrences == 790);
    CHECK(100.0 * s.continuous_share() == doctest::Approx(58.8).epsilon(0.001));
}
