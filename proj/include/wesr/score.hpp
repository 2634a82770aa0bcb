#ifndef WESR_SCORE_HPP
#define WESR_SCORE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wesr/align.hpp"
#include "wesr/transcript.hpp"

namespace wesr {

// Unified position over 2N+1 slots: even 2k = inter-word gap k, odd 2i+1
// = word i. Continuous tags occupy only odd slots, discrete only even.
// Pairs are (position, tag id); set semantics collapse duplicates.
using PositionSet = std::set<std::pair<int, int>>;

PositionSet positions_of(const AnnotatedTranscript& t);

struct Counts {
    long long tp = 0, fp = 0, fn = 0;

    Counts& operator+=(const Counts& o) {
        tp += o.tp; fp += o.fp; fn += o.fn;
        return *this;
    }
    friend bool operator==(const Counts&, const Counts&) = default;
};

struct ConfusionCounts {
    std::map<int, Counts> per_tag;  // tag id -> counts

    void merge(const ConfusionCounts& o) {
        for (const auto& [tag, c] : o.per_tag) per_tag[tag] += c;
    }
    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

// Per-tag tp/fp/fn between two position sets over the same word count.
// True negatives are never counted.
ConfusionCounts count(const PositionSet& ref_positions,
                      const PositionSet& hyp_positions);

// Category-level counting: every position label is re-labeled with its
// aggregated category before the set operations, so a within-category tag
// confusion at the right position still counts as a category tp.
std::map<Category, Counts> count_by_category(const PositionSet& ref_positions,
                                             const PositionSet& hyp_positions);

struct PRF {
    double precision = 0.0, recall = 0.0, f1 = 0.0;
};

PRF prf_from(const Counts& c);

// Micro: summed counts across tags. Throws NoReferenceEventsError when no
// tag has tp+fn > 0.
PRF micro(const ConfusionCounts& counts);

// Macro: unweighted mean of per-tag P, R, F1 over tags with any activity
// (tp+fp+fn > 0); macro-F1 is the mean of F1s, not F1 of the means.
PRF macro(const ConfusionCounts& counts);

// Counts summed within each category, then PRF.
std::map<Category, Counts> aggregate_by_category(const ConfusionCounts& counts);

struct KindScores {
    Counts discrete;
    Counts continuous;
    bool discrete_has_reference = false;
    bool continuous_has_reference = false;
};

KindScores kind_split(const ConfusionCounts& counts);

// Tag-stripped word error rate: Levenshtein distance over tokens divided
// by max(1, reference token count). Chinese text decomposes to character
// units through the shared tokenizer.
double wer(std::string_view ref_text, std::string_view hyp_text,
           Language language = Language::Unknown);

long long edit_distance(const std::vector<std::string>& a,
                        const std::vector<std::string>& b);

struct ScoreReport {
    ConfusionCounts tags;
    std::map<Category, Counts> categories;  // from position relabeling
    long long utterances = 0;
    std::vector<std::string> missing_hypotheses;    // ids scored as empty
    std::vector<std::string> unmatched_hypotheses;  // hyp ids with no ref
    // (id, diagnostic) pairs from lenient hypothesis parsing
    std::vector<std::pair<std::string, ParseDiagnostic>> parse_diagnostics;

    void merge(const ScoreReport& o);
};

struct ScoreOptions {
    ParseMode hyp_mode = ParseMode::Lenient;
    std::optional<Language> language_filter;
    bool parallel = true;
};

// Strict-mode parse failure during corpus scoring, with every failing
// utterance id attached.
struct CorpusParseError : Error {
    CorpusParseError(std::string msg, std::vector<std::string> ids_)
        : Error(std::move(msg)), ids(std::move(ids_)) {}
    std::vector<std::string> ids;
};

struct RefUtterance {
    std::string id;
    std::string text;  // tagged reference transcript, strict-parseable
    Language language = Language::Unknown;
};

// End-to-end protocol: per utterance, strip+tokenize the reference,
// event-preserving-align the hypothesis, map both to unified positions,
// count; then merge. A missing hypothesis scores as an empty transcript
// (all reference events fn).
ScoreReport score_corpus(const std::vector<RefUtterance>& refs,
                         const std::map<std::string, std::string>& hyps,
                         const ScoreOptions& opts = {});

// Plain serial fold kept as the reference implementation for the parallel
// scorer; must produce identical reports.
ScoreReport score_corpus_serial(const std::vector<RefUtterance>& refs,
                                const std::map<std::string, std::string>& hyps,
                                const ScoreOptions& opts = {});

}  // namespace wesr

#endif  // WESR_SCORE_HPP
