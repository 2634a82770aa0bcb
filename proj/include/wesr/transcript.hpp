#ifndef WESR_TRANSCRIPT_HPP
#define WESR_TRANSCRIPT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "wesr/errors.hpp"
#include "wesr/taxonomy.hpp"

namespace wesr {

enum class Language { En, Zh, Mixed, Unknown };

Language language_from_string(std::string_view s);
std::string_view language_name(Language l);

// Discrete event anchored at an inter-word gap: gap 0 precedes the first
// word, gap N follows the last.
struct DiscreteEvent {
    int gap;
    int tag;  // registry id, kind Discrete

    friend bool operator==(const DiscreteEvent&, const DiscreteEvent&) = default;
};

// Continuous event over an inclusive word range.
struct SpanEvent {
    int start;
    int end;
    int tag;  // registry id, kind Continuous

    friend bool operator==(const SpanEvent&, const SpanEvent&) = default;
};

struct AnnotatedTranscript {
    std::vector<std::string> words;
    std::vector<DiscreteEvent> discrete;
    std::vector<SpanEvent> spans;
    Language language = Language::Unknown;

    int word_count() const { return static_cast<int>(words.size()); }
    bool valid() const;

    friend bool operator==(const AnnotatedTranscript&,
                           const AnnotatedTranscript&) = default;
};

enum class DiagnosticKind {
    UnknownTag,
    UnclosedSpan,
    CloseWithoutOpen,
    CrossingSpans,
    EmptySpan,
    MalformedDelimiter,
};

std::string_view diagnostic_kind_name(DiagnosticKind k);

struct ParseDiagnostic {
    DiagnosticKind kind;
    size_t offset;  // byte offset into the original input
    std::string message;
};

struct ParseError : Error {
    ParseError(ParseDiagnostic d)
        : Error(std::string(diagnostic_kind_name(d.kind)) + " at byte " +
                std::to_string(d.offset) + ": " + d.message),
          diagnostic(std::move(d)) {}
    ParseDiagnostic diagnostic;
};

enum class ParseMode { Strict, Lenient };

struct ParseResult {
    AnnotatedTranscript transcript;
    std::vector<ParseDiagnostic> diagnostics;  // empty in strict mode
};

struct TokenizeOptions {
    bool lowercase = true;
    bool strip_punct = true;
};

// Latin runs split on whitespace with edge punctuation stripped, each CJK
// codepoint its own token, Latin/digit runs embedded in CJK kept whole.
std::vector<std::string> tokenize(std::string_view text,
                                  Language hint = Language::Unknown,
                                  const TokenizeOptions& opts = {});

Language detect_language(std::string_view text);

// Strict mode throws ParseError on the first diagnostic; lenient mode
// repairs (drops unknown tags, auto-closes open spans, drops empty spans)
// and reports what it did.
ParseResult parse(std::string_view tagged_text, ParseMode mode);

std::string serialize(const AnnotatedTranscript& t);

// Removes well-formed tag tokens and collapses the surrounding whitespace;
// malformed fragments are left in place (parse surfaces those).
std::string strip_tags(std::string_view tagged_text);

}  // namespace wesr

#endif  // WESR_TRANSCRIPT_HPP
