#ifndef WESR_CORPUS_HPP
#define WESR_CORPUS_HPP

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wesr/score.hpp"
#include "wesr/taxonomy.hpp"
#include "wesr/transcript.hpp"

namespace wesr {

// One JSONL manifest record:
// {"id", "text", "language", "audio"?, "source"?, "duration_seconds"?}
struct ManifestEntry {
    std::string id;
    std::string text;
    Language language = Language::Unknown;
    std::optional<std::string> audio;
    std::optional<std::string> source;
    std::optional<double> duration_seconds;
};

// Entries are validated on load: ids unique, text strict-parseable.
// Failures carry the 1-based line number.
std::vector<ManifestEntry> load_manifest(const std::string& path);
std::vector<ManifestEntry> load_manifest(std::istream& in,
                                         const std::string& name);

// Hypothesis JSONL: {"id", "text"}; parsing is deferred to scoring.
std::map<std::string, std::string> load_hypotheses(const std::string& path);
std::map<std::string, std::string> load_hypotheses(std::istream& in,
                                                   const std::string& name);

std::vector<RefUtterance> to_ref_utterances(const std::vector<ManifestEntry>& entries);

// Per-utterance histogram buckets: exactly 1, exactly 2, >= 3.
struct TagHistogram {
    std::array<long long, 3> buckets{0, 0, 0};

    long long total() const { return buckets[0] + buckets[1] + buckets[2]; }
    void add(long long tags_in_utterance);
};

struct CorpusStats {
    long long entries = 0;            // all manifest records
    long long utterances = 0;         // records carrying >= 1 event tag
    long long total_occurrences = 0;  // span pairs counted once
    TagHistogram total_tags;          // all tags per utterance
    TagHistogram unique_tags;         // distinct tag names per utterance
    std::map<int, long long> per_tag;
    long long continuous_occurrences = 0;
    long long discrete_occurrences = 0;
    std::map<Language, long long> utterances_by_language;
    std::map<Language, double> duration_by_language;
    bool has_durations = false;

    double continuous_share() const {
        return total_occurrences > 0
                   ? double(continuous_occurrences) / double(total_occurrences)
                   : 0.0;
    }
};

// Tag-free utterances are permitted in manifests but excluded from the
// histograms and the utterance count.
CorpusStats compute_stats(const std::vector<ManifestEntry>& entries);

struct ExclusionRecord {
    std::string id;
    std::string reason;
    std::string raw_tag;
};

struct NormalizeResult {
    std::vector<ManifestEntry> entries;
    std::vector<ExclusionRecord> excluded;
};

// Rewrites external-dataset tags into the WESR taxonomy; records carrying
// any out-of-taxonomy tag are dropped and reported. Output strict-parses.
NormalizeResult normalize_external(Dataset dataset,
                                   const std::vector<ManifestEntry>& records,
                                   const ExternalMapping& mapping);

}  // namespace wesr

#endif  // WESR_CORPUS_HPP
