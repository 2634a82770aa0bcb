#include "wesr/transcript.hpp"

#include <algorithm>
#include <cctype>

#include "wesr/utf8.hpp"

namespace wesr {

Language language_from_string(std::string_view s) {
    if (s == "en") return Language::En;
    if (s == "zh") return Language::Zh;
    if (s == "mixed") return Language::Mixed;
    return Language::Unknown;
}

std::string_view language_name(Language l) {
    switch (l) {
        case Language::En: return "en";
        case Language::Zh: return "zh";
        case Language::Mixed: return "mixed";
        case Language::Unknown: return "unknown";
    }
    return "unknown";
}

std::string_view diagnostic_kind_name(DiagnosticKind k) {
    switch (k) {
        case DiagnosticKind::UnknownTag: return "UnknownTag";
        case DiagnosticKind::UnclosedSpan: return "UnclosedSpan";
        case DiagnosticKind::CloseWithoutOpen: return "CloseWithoutOpen";
        case DiagnosticKind::CrossingSpans: return "CrossingSpans";
        case DiagnosticKind::EmptySpan: return "EmptySpan";
        case DiagnosticKind::MalformedDelimiter: return "MalformedDelimiter";
    }
    return "?";
}

namespace {

bool is_delim_char(char c) {
    return c == '[' || c == ']' || c == '<' || c == '>';
}

bool spans_overlap(const SpanEvent& a, const SpanEvent& b) {
    return a.start <= b.end && b.start <= a.end;
}

bool spans_cross(const SpanEvent& a, const SpanEvent& b) {
    return (a.start < b.start && b.start <= a.end && a.end < b.end) ||
           (b.start < a.start && a.start <= b.end && b.end < a.end);
}

void sort_events(AnnotatedTranscript& t) {
    std::stable_sort(t.discrete.begin(), t.discrete.end(),
                     [](const DiscreteEvent& a, const DiscreteEvent& b) {
                         return std::tie(a.gap, a.tag) < std::tie(b.gap, b.tag);
                     });
    std::stable_sort(t.spans.begin(), t.spans.end(),
                     [](const SpanEvent& a, const SpanEvent& b) {
                         if (a.start != b.start) return a.start < b.start;
                         if (a.end != b.end) return a.end > b.end;
                         return a.tag < b.tag;
                     });
}

}  // namespace

bool AnnotatedTranscript::valid() const {
    const int n = word_count();
    for (const auto& w : words) {
        if (w.empty()) return false;
        for (char c : w)
            if (is_delim_char(c)) return false;
    }
    for (const auto& d : discrete) {
        if (d.gap < 0 || d.gap > n) return false;
        if (d.tag < 0 || d.tag >= kTagCount) return false;
        if (taxonomy::by_id(d.tag).kind != EventKind::Discrete) return false;
    }
    for (const auto& s : spans) {
        if (s.start < 0 || s.start > s.end || s.end > n - 1) return false;
        if (s.tag < 0 || s.tag >= kTagCount) return false;
        if (taxonomy::by_id(s.tag).kind != EventKind::Continuous) return false;
    }
    for (size_t i = 0; i < spans.size(); ++i) {
        for (size_t j = i + 1; j < spans.size(); ++j) {
            if (spans[i].tag == spans[j].tag &&
                spans_overlap(spans[i], spans[j]))
                return false;
            if (spans_cross(spans[i], spans[j])) return false;
        }
    }
    return true;
}

Language detect_language(std::string_view text) {
    bool cjk = false, latin = false;
    size_t i = 0;
    while (i < text.size()) {
        char32_t cp = utf8::decode(text, i);
        cp = utf8::normalize_width(cp);
        if (utf8::is_cjk(cp)) cjk = true;
        else if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z'))
            latin = true;
    }
    if (cjk && latin) return Language::Mixed;
    if (cjk) return Language::Zh;
    if (latin) return Language::En;
    return Language::Unknown;
}

std::vector<std::string> tokenize(std::string_view text, Language /*hint*/,
                                  const TokenizeOptions& opts) {
    std::vector<std::string> out;
    std::u32string run;

    auto flush = [&]() {
        if (run.empty()) return;
        size_t b = 0, e = run.size();
        if (opts.strip_punct) {
            while (b < e && (utf8::is_punct(run[b]) || utf8::is_apostrophe(run[b])))
                ++b;
            while (e > b &&
                   (utf8::is_punct(run[e - 1]) || utf8::is_apostrophe(run[e - 1])))
                --e;
        }
        if (b < e) {
            std::string tok;
            for (size_t k = b; k < e; ++k) utf8::append(tok, run[k]);
            out.push_back(std::move(tok));
        }
        run.clear();
    };

    size_t i = 0;
    while (i < text.size()) {
        char32_t cp = utf8::normalize_width(utf8::decode(text, i));
        if (utf8::is_space(cp)) {
            flush();
        } else if (utf8::is_cjk(cp)) {
            flush();
            std::string tok;
            utf8::append(tok, cp);
            out.push_back(std::move(tok));
        } else if (cp >= 0x80 && utf8::is_punct(cp)) {
            // CJK-style punctuation separates tokens outright.
            flush();
        } else {
            if (opts.lowercase && cp >= 'A' && cp <= 'Z') cp += 32;
            run.push_back(cp);
        }
    }
    flush();
    return out;
}

namespace {

struct TagToken {
    enum Kind { Discrete, Open, Close } kind;
    std::string name;   // raw name text between the delimiters
    size_t offset;      // byte offset of the opening delimiter
};

// Either a text segment or a tag. The lexer emits them in order.
struct LexItem {
    bool is_tag;
    std::string text;
    TagToken tag;
};

bool is_word_char(char32_t cp) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
           (cp >= '0' && cp <= '9');
}

// Latin/digit byte directly before offset i (ASCII check suffices: CJK and
// multibyte punctuation never match).
bool alnum_before(std::string_view s, size_t i) {
    return i > 0 && is_word_char(static_cast<unsigned char>(s[i - 1]));
}

bool alnum_at(std::string_view s, size_t i) {
    return i < s.size() && is_word_char(static_cast<unsigned char>(s[i]));
}

bool plausible_tag_name(std::string_view name) {
    if (name.empty()) return false;
    for (char c : name) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
              c == '-' || c == ' '))
            return false;
    }
    return true;
}

class Parser {
  public:
    Parser(std::string_view input, ParseMode mode)
        : input_(input), mode_(mode) {}

    ParseResult run() {
        lex();
        assemble();
        finish();
        result_.transcript.language = detect_language(plain_);
        sort_events(result_.transcript);
        return std::move(result_);
    }

  private:
    void diag(DiagnosticKind kind, size_t offset, std::string msg) {
        ParseDiagnostic d{kind, offset, std::move(msg)};
        if (mode_ == ParseMode::Strict) throw ParseError(std::move(d));
        result_.diagnostics.push_back(std::move(d));
    }

    void add_text(std::string_view seg) {
        plain_ += seg;
        for (auto& w : tokenize(seg)) result_.transcript.words.push_back(std::move(w));
    }

    void lex() {
        size_t i = 0;
        size_t seg_start = 0;
        auto flush_seg = [&](size_t end) {
            if (end > seg_start)
                pending_ += input_.substr(seg_start, end - seg_start);
        };
        auto emit_pending = [&]() {
            if (!pending_.empty()) {
                items_.push_back({false, std::move(pending_), {}});
                pending_.clear();
            }
        };
        while (i < input_.size()) {
            char c = input_[i];
            if (c == '[' || c == '<') {
                bool close = false;
                size_t name_begin = i + 1;
                if (c == '<' && name_begin < input_.size() &&
                    input_[name_begin] == '/') {
                    close = true;
                    ++name_begin;
                }
                char closer = (c == '[') ? ']' : '>';
                size_t j = name_begin;
                while (j < input_.size() && input_[j] != closer &&
                       !is_delim_char(input_[j]) && input_[j] != '\n')
                    ++j;
                std::string_view name =
                    input_.substr(name_begin, j - name_begin);
                if (j >= input_.size() || input_[j] != closer ||
                    !plausible_tag_name(name)) {
                    diag(DiagnosticKind::MalformedDelimiter, i,
                         std::string("unterminated '") + c + "'");
                    flush_seg(i);
                    seg_start = i + 1;  // lenient: drop the delimiter
                    ++i;
                    continue;
                }
                if (alnum_before(input_, i) && alnum_at(input_, j + 1)) {
                    diag(DiagnosticKind::MalformedDelimiter, i,
                         "tag splits a word");
                    // lenient: drop the tag, fusing the word fragments
                    flush_seg(i);
                    seg_start = j + 1;
                    i = j + 1;
                    continue;
                }
                flush_seg(i);
                emit_pending();
                TagToken::Kind kind = (c == '[') ? TagToken::Discrete
                                    : close      ? TagToken::Close
                                                 : TagToken::Open;
                items_.push_back({true, {}, {kind, std::string(name), i}});
                seg_start = j + 1;
                i = j + 1;
            } else if (c == ']' || c == '>') {
                diag(DiagnosticKind::MalformedDelimiter, i,
                     std::string("stray '") + c + "'");
                flush_seg(i);
                seg_start = i + 1;
                ++i;
            } else {
                ++i;
            }
        }
        flush_seg(input_.size());
        emit_pending();
    }

    void assemble() {
        auto& t = result_.transcript;
        for (auto& item : items_) {
            if (!item.is_tag) {
                add_text(item.text);
                continue;
            }
            const TagToken& tok = item.tag;
            const int here = t.word_count();
            switch (tok.kind) {
                case TagToken::Discrete: {
                    const EventTag* tag = taxonomy::find_discrete(tok.name);
                    if (!tag) {
                        diag(DiagnosticKind::UnknownTag, tok.offset,
                             "[" + tok.name + "]");
                        break;
                    }
                    t.discrete.push_back({here, tag->id});
                    break;
                }
                case TagToken::Open: {
                    const EventTag* tag = taxonomy::find_continuous(tok.name);
                    if (!tag) {
                        diag(DiagnosticKind::UnknownTag, tok.offset,
                             "<" + tok.name + ">");
                        break;
                    }
                    bool already_open =
                        std::any_of(stack_.begin(), stack_.end(),
                                    [&](const auto& e) { return e.tag == tag->id; });
                    if (already_open) {
                        diag(DiagnosticKind::CrossingSpans, tok.offset,
                             "<" + std::string(tag->name) + "> opened twice");
                        break;
                    }
                    stack_.push_back({tag->id, here, tok.offset});
                    break;
                }
                case TagToken::Close: {
                    const EventTag* tag = taxonomy::find_continuous(tok.name);
                    if (!tag) {
                        diag(DiagnosticKind::UnknownTag, tok.offset,
                             "</" + tok.name + ">");
                        break;
                    }
                    auto it = std::find_if(
                        stack_.rbegin(), stack_.rend(),
                        [&](const auto& e) { return e.tag == tag->id; });
                    if (it == stack_.rend()) {
                        diag(DiagnosticKind::CloseWithoutOpen, tok.offset,
                             "</" + std::string(tag->name) + ">");
                        break;
                    }
                    if (it != stack_.rbegin()) {
                        diag(DiagnosticKind::CrossingSpans, tok.offset,
                             "</" + std::string(tag->name) +
                                 "> crosses an open span");
                        break;
                    }
                    OpenSpan open = stack_.back();
                    stack_.pop_back();
                    if (here == open.start) {
                        diag(DiagnosticKind::EmptySpan, open.offset,
                             "<" + std::string(tag->name) + "> wraps no words");
                        break;
                    }
                    t.spans.push_back({open.start, here - 1, tag->id});
                    break;
                }
            }
        }
    }

    void finish() {
        auto& t = result_.transcript;
        const int n = t.word_count();
        for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
            diag(DiagnosticKind::UnclosedSpan, it->offset,
                 "<" + std::string(taxonomy::by_id(it->tag).name) +
                     "> never closed");
            if (it->start <= n - 1)  // auto-close; empty remnants are dropped
                t.spans.push_back({it->start, n - 1, it->tag});
        }
        stack_.clear();
    }

    struct OpenSpan {
        int tag;
        int start;
        size_t offset;
    };

    std::string_view input_;
    ParseMode mode_;
    std::vector<LexItem> items_;
    std::string pending_;
    std::string plain_;
    std::vector<OpenSpan> stack_;
    ParseResult result_;
};

}  // namespace

ParseResult parse(std::string_view tagged_text, ParseMode mode) {
    if (!utf8::valid(tagged_text))
        throw ParseError({DiagnosticKind::MalformedDelimiter, 0,
                          "input is not valid UTF-8"});
    return Parser(tagged_text, mode).run();
}

namespace {

bool token_is_cjk(const std::string& tok) {
    size_t i = 0;
    char32_t cp = utf8::decode(tok, i);
    return i == tok.size() && utf8::is_cjk(cp);
}

bool ends_alnum(const std::string& s) {
    return !s.empty() && is_word_char(static_cast<unsigned char>(s.back()));
}

bool starts_alnum(const std::string& s) {
    return !s.empty() && is_word_char(static_cast<unsigned char>(s.front()));
}

}  // namespace

std::string serialize(const AnnotatedTranscript& t) {
    if (!t.valid())
        throw InvalidTranscriptError("transcript violates its invariants");
    const int n = t.word_count();

    struct Atom {
        std::string text;
        bool is_tag;
        bool cjk;  // CJK word (never spaced against neighbours)
    };
    std::vector<Atom> atoms;

    for (int g = 0; g <= n; ++g) {
        // closes, inner-to-outer
        std::vector<const SpanEvent*> closes;
        for (const auto& s : t.spans)
            if (s.end == g - 1) closes.push_back(&s);
        std::sort(closes.begin(), closes.end(),
                  [](const SpanEvent* a, const SpanEvent* b) {
                      if (a->start != b->start) return a->start > b->start;
                      return a->tag > b->tag;
                  });
        for (const SpanEvent* s : closes)
            atoms.push_back({"</" + std::string(taxonomy::by_id(s->tag).name) + ">",
                             true, false});

        std::vector<const DiscreteEvent*> here;
        for (const auto& d : t.discrete)
            if (d.gap == g) here.push_back(&d);
        std::stable_sort(here.begin(), here.end(),
                         [](const DiscreteEvent* a, const DiscreteEvent* b) {
                             return a->tag < b->tag;
                         });
        for (const DiscreteEvent* d : here)
            atoms.push_back({taxonomy::render(taxonomy::by_id(d->tag)), true,
                             false});

        // opens, outer-to-inner
        std::vector<const SpanEvent*> opens;
        for (const auto& s : t.spans)
            if (s.start == g) opens.push_back(&s);
        std::sort(opens.begin(), opens.end(),
                  [](const SpanEvent* a, const SpanEvent* b) {
                      if (a->end != b->end) return a->end > b->end;
                      return a->tag < b->tag;
                  });
        for (const SpanEvent* s : opens)
            atoms.push_back({"<" + std::string(taxonomy::by_id(s->tag).name) + ">",
                             true, false});

        if (g < n) atoms.push_back({t.words[g], false, token_is_cjk(t.words[g])});
    }

    const bool spaced = (t.language == Language::En ||
                         t.language == Language::Unknown);
    std::string out;
    for (size_t i = 0; i < atoms.size(); ++i) {
        if (i > 0) {
            const Atom& a = atoms[i - 1];
            const Atom& b = atoms[i];
            bool need_space;
            if (spaced) {
                need_space = true;
            } else {
                // Only separate where fusion would corrupt a Latin word or
                // glue a tag into one.
                need_space = (a.is_tag || ends_alnum(a.text)) &&
                             (b.is_tag || starts_alnum(b.text)) &&
                             !(a.cjk || b.cjk);
                if (!a.is_tag && !b.is_tag && ends_alnum(a.text) &&
                    starts_alnum(b.text))
                    need_space = true;
            }
            if (need_space) out.push_back(' ');
        }
        out += atoms[i].text;
    }
    return out;
}

std::string strip_tags(std::string_view tagged_text) {
    std::string out;
    size_t i = 0;
    while (i < tagged_text.size()) {
        char c = tagged_text[i];
        if (c == '[' || c == '<') {
            size_t name_begin = i + 1;
            if (c == '<' && name_begin < tagged_text.size() &&
                tagged_text[name_begin] == '/')
                ++name_begin;
            char closer = (c == '[') ? ']' : '>';
            size_t j = name_begin;
            while (j < tagged_text.size() && tagged_text[j] != closer &&
                   !is_delim_char(tagged_text[j]) && tagged_text[j] != '\n')
                ++j;
            if (j < tagged_text.size() && tagged_text[j] == closer &&
                plausible_tag_name(tagged_text.substr(name_begin, j - name_begin))) {
                // drop the tag; avoid doubling whitespace around it
                i = j + 1;
                bool prev_ws = out.empty() || out.back() == ' ' ||
                               out.back() == '\t' || out.back() == '\n';
                if (prev_ws) {
                    while (i < tagged_text.size() &&
                           (tagged_text[i] == ' ' || tagged_text[i] == '\t' ||
                            tagged_text[i] == '\n'))
                        ++i;
                }
                continue;
            }
        }
        out.push_back(c);
        ++i;
    }
    // trim
    size_t b = out.find_first_not_of(" \t\n\r");
    if (b == std::string::npos) return "";
    size_t e = out.find_last_not_of(" \t\n\r");
    return out.substr(b, e - b + 1);
}

}  // namespace wesr
