#include "wesr/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wesr {

using json = nlohmann::json;

namespace {

json parse_line(const std::string& line, int lineno) {
    try {
        return json::parse(line);
    } catch (const json::parse_error& e) {
        throw SchemaError("line " + std::to_string(lineno) +
                              ": invalid JSON: " + e.what(),
                          lineno);
    }
}

std::string require_string(const json& j, const char* key, int lineno) {
    if (!j.contains(key) || !j[key].is_string())
        throw SchemaError("line " + std::to_string(lineno) +
                              ": missing string field \"" + key + "\"",
                          lineno);
    return j[key].get<std::string>();
}

}  // namespace

std::vector<ManifestEntry> load_manifest(std::istream& in,
                                         const std::string& name) {
    std::vector<ManifestEntry> out;
    std::set<std::string> ids;
    std::vector<std::string> failures;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = parse_line(line, lineno);
        ManifestEntry e;
        e.id = require_string(j, "id", lineno);
        e.text = require_string(j, "text", lineno);
        if (!ids.insert(e.id).second)
            throw DuplicateIdError(name + " line " + std::to_string(lineno) +
                                   ": duplicate id \"" + e.id + "\"");
        if (j.contains("language"))
            e.language = language_from_string(j["language"].get<std::string>());
        else
            e.language = detect_language(e.text);
        if (j.contains("audio") && j["audio"].is_string())
            e.audio = j["audio"].get<std::string>();
        if (j.contains("source") && j["source"].is_string())
            e.source = j["source"].get<std::string>();
        if (j.contains("duration_seconds") && j["duration_seconds"].is_number()) {
            double d = j["duration_seconds"].get<double>();
            if (d < 0)
                throw SchemaError("line " + std::to_string(lineno) +
                                      ": negative duration_seconds",
                                  lineno);
            e.duration_seconds = d;
        }
        try {
            parse(e.text, ParseMode::Strict);
        } catch (const ParseError& pe) {
            failures.push_back("line " + std::to_string(lineno) + " id " +
                               e.id + ": " + pe.what());
        }
        out.push_back(std::move(e));
    }
    if (!failures.empty())
        throw CorpusParseError(name + ": " + std::to_string(failures.size()) +
                                   " entrie(s) failed strict parsing",
                               std::move(failures));
    return out;
}

std::vector<ManifestEntry> load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest: " + path);
    return load_manifest(in, path);
}

std::map<std::string, std::string> load_hypotheses(std::istream& in,
                                                   const std::string& name) {
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = parse_line(line, lineno);
        std::string id = require_string(j, "id", lineno);
        std::string text = require_string(j, "text", lineno);
        if (!out.emplace(std::move(id), std::move(text)).second)
            throw DuplicateIdError(name + " line " + std::to_string(lineno) +
                                   ": duplicate id");
    }
    return out;
}

std::map<std::string, std::string> load_hypotheses(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open hypothesis file: " + path);
    return load_hypotheses(in, path);
}

std::vector<RefUtterance> to_ref_utterances(
    const std::vector<ManifestEntry>& entries) {
    std::vector<RefUtterance> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back({e.id, e.text, e.language});
    return out;
}

void TagHistogram::add(long long tags_in_utterance) {
    if (tags_in_utterance <= 0) return;
    if (tags_in_utterance == 1) ++buckets[0];
    else if (tags_in_utterance == 2) ++buckets[1];
    else ++buckets[2];
}

CorpusStats compute_stats(const std::vector<ManifestEntry>& entries) {
    CorpusStats stats;
    for (const auto& e : entries) {
        ++stats.entries;
        AnnotatedTranscript t = parse(e.text, ParseMode::Strict).transcript;
        long long total = static_cast<long long>(t.discrete.size() + t.spans.size());
        if (total == 0) continue;  // pure-ASR filler stays out of the histograms
        ++stats.utterances;
        std::set<int> unique;
        for (const auto& d : t.discrete) {
            unique.insert(d.tag);
            ++stats.per_tag[d.tag];
        }
        for (const auto& s : t.spans) {
            unique.insert(s.tag);
            ++stats.per_tag[s.tag];
        }
        stats.total_occurrences += total;
        stats.continuous_occurrences += static_cast<long long>(t.spans.size());
        stats.discrete_occurrences += static_cast<long long>(t.discrete.size());
        stats.total_tags.add(total);
        stats.unique_tags.add(static_cast<long long>(unique.size()));
        Language lang = e.language != Language::Unknown ? e.language
                                                        : t.language;
        ++stats.utterances_by_language[lang];
        if (e.duration_seconds) {
            stats.has_durations = true;
            stats.duration_by_language[lang] += *e.duration_seconds;
        }
    }
    return stats;
}

namespace {

// Rewrites one external record's bracketed tags through the mapping.
// Returns the rewritten text, or an exclusion reason.
struct RewriteOutcome {
    std::string text;
    std::optional<ExclusionRecord> exclusion;
};

RewriteOutcome rewrite_tags(const std::string& id, const std::string& text,
                            Dataset dataset, const ExternalMapping& mapping) {
    RewriteOutcome out;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '[' || c == '<') {
            char closer = (c == '[') ? ']' : '>';
            size_t name_begin = i + 1;
            bool close_form = false;
            if (c == '<' && name_begin < text.size() && text[name_begin] == '/') {
                close_form = true;
                ++name_begin;
            }
            size_t j = text.find(closer, name_begin);
            if (j != std::string::npos) {
                std::string raw = text.substr(name_begin, j - name_begin);
                std::optional<EventTag> mapped;
                try {
                    mapped = mapping.map(dataset, raw);
                } catch (const UnknownExternalTagError&) {
                    out.exclusion = {id, "unknown_external_tag", raw};
                    return out;
                }
                if (!mapped) {
                    out.exclusion = {id, "outside_taxonomy", raw};
                    return out;
                }
                if (mapped->kind == EventKind::Discrete) {
                    if (close_form) {
                        out.exclusion = {id, "discrete_target_for_span", raw};
                        return out;
                    }
                    out.text += taxonomy::render(*mapped);
                } else {
                    out.text += close_form
                                    ? "</" + std::string(mapped->name) + ">"
                                    : taxonomy::render(*mapped);
                }
                i = j + 1;
                continue;
            }
        }
        out.text.push_back(c);
        ++i;
    }
    return out;
}

}  // namespace

NormalizeResult normalize_external(Dataset dataset,
                                   const std::vector<ManifestEntry>& records,
                                   const ExternalMapping& mapping) {
    NormalizeResult result;
    for (const auto& rec : records) {
        RewriteOutcome rw = rewrite_tags(rec.id, rec.text, dataset, mapping);
        if (rw.exclusion) {
            result.excluded.push_back(std::move(*rw.exclusion));
            continue;
        }
        ManifestEntry e = rec;
        e.text = std::move(rw.text);
        try {
            parse(e.text, ParseMode::Strict);
        } catch (const ParseError& pe) {
            result.excluded.push_back(
                {rec.id, std::string("parse_failure: ") + pe.what(), ""});
            continue;
        }
        if (e.language == Language::Unknown)
            e.language = detect_language(e.text);
        result.entries.push_back(std::move(e));
    }
    return result;
}

}  // namespace wesr
