#include "wesr/perturb.hpp"

#include <algorithm>
#include <random>

namespace wesr {

namespace {

constexpr const char* kLexicon[] = {
    "the", "and", "you", "okay", "well", "right", "really", "maybe",
    "好", "的", "是", "我", "就",
};
constexpr size_t kLexiconSize = sizeof(kLexicon) / sizeof(kLexicon[0]);

double unit(std::mt19937_64& rng) {
    // 53-bit mantissa draw; stable across platforms, unlike
    // uniform_real_distribution
    return double(rng() >> 11) / 9007199254740992.0;
}

size_t pick(std::mt19937_64& rng, size_t n) { return n ? rng() % n : 0; }

std::string mutate_word(std::mt19937_64& rng, const std::string& w) {
    if (unit(rng) < 0.5 || w.empty())
        return kLexicon[pick(rng, kLexiconSize)];
    // character mutation on ASCII words; multibyte words fall back to lexicon
    for (char c : w)
        if (static_cast<unsigned char>(c) >= 0x80)
            return kLexicon[pick(rng, kLexiconSize)];
    std::string out = w;
    size_t pos = pick(rng, out.size());
    out[pos] = static_cast<char>('a' + pick(rng, 26));
    if (out == w) out.push_back('x');
    return out;
}

bool span_set_valid(const std::vector<SpanEvent>& spans, int n) {
    AnnotatedTranscript probe;
    probe.words.assign(static_cast<size_t>(std::max(n, 0)), "w");
    probe.spans = spans;
    return probe.valid();
}

void canonical_sort(AnnotatedTranscript& t) {
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

std::uint64_t derive_seed(std::uint64_t seed, std::string_view utterance_id) {
    // FNV-1a over the id, folded into the base seed with splitmix64 steps
    std::uint64_t h = 14695981039346656037ULL;
    for (char c : utterance_id) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL + h;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

AnnotatedTranscript perturb_words(const AnnotatedTranscript& t,
                                  const PerturbSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    const int n = t.word_count();

    AnnotatedTranscript out;
    out.language = t.language;
    std::vector<int> gap_map(static_cast<size_t>(n) + 1, 0);
    std::vector<int> word_map(static_cast<size_t>(n), -1);

    for (int i = 0; i < n; ++i) {
        bool del = unit(rng) < spec.deletion_rate;
        bool sub = unit(rng) < spec.substitution_rate;
        bool ins = unit(rng) < spec.insertion_rate;
        if (!del) {
            word_map[static_cast<size_t>(i)] = out.word_count();
            out.words.push_back(sub ? mutate_word(rng, t.words[static_cast<size_t>(i)])
                                    : t.words[static_cast<size_t>(i)]);
        }
        gap_map[static_cast<size_t>(i) + 1] = out.word_count();
        if (ins) out.words.push_back(kLexicon[pick(rng, kLexiconSize)]);
    }

    for (const DiscreteEvent& d : t.discrete)
        out.discrete.push_back({gap_map[static_cast<size_t>(d.gap)], d.tag});
    for (const SpanEvent& s : t.spans) {
        int lo = -1, hi = -1;
        for (int i = s.start; i <= s.end; ++i) {
            int w = word_map[static_cast<size_t>(i)];
            if (w < 0) continue;
            if (lo < 0) lo = w;
            hi = w;
        }
        if (lo < 0) continue;  // all carrier words deleted
        out.spans.push_back({lo, hi, s.tag});
    }
    canonical_sort(out);
    return out;
}

AnnotatedTranscript perturb_tags(const AnnotatedTranscript& t,
                                 const PerturbSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    const int n = t.word_count();

    AnnotatedTranscript out;
    out.words = t.words;
    out.language = t.language;

    for (const DiscreteEvent& d : t.discrete) {
        bool drop = unit(rng) < spec.tag_drop;
        int offset = spec.gap_offsets.empty()
                         ? 0
                         : spec.gap_offsets[pick(rng, spec.gap_offsets.size())];
        if (drop) continue;
        out.discrete.push_back({std::clamp(d.gap + offset, 0, n), d.tag});
    }

    std::vector<SpanEvent> accepted;
    std::vector<SpanEvent> rest(t.spans);
    for (size_t k = 0; k < t.spans.size(); ++k) {
        const SpanEvent& s = t.spans[k];
        bool drop = unit(rng) < spec.tag_drop;
        int d1 = spec.span_deltas.empty()
                     ? 0
                     : spec.span_deltas[pick(rng, spec.span_deltas.size())];
        int d2 = spec.span_deltas.empty()
                     ? 0
                     : spec.span_deltas[pick(rng, spec.span_deltas.size())];
        rest.erase(rest.begin());
        if (drop) continue;
        SpanEvent jittered = s;
        if (n > 0) {
            jittered.start = std::clamp(s.start + d1, 0, n - 1);
            jittered.end = std::clamp(s.end + d2, 0, n - 1);
            if (jittered.start > jittered.end) std::swap(jittered.start, jittered.end);
        }
        // accept the jitter only if it stays compatible with every other
        // span (already accepted or still pending at original position)
        std::vector<SpanEvent> probe = accepted;
        probe.push_back(jittered);
        probe.insert(probe.end(), rest.begin(), rest.end());
        if (span_set_valid(probe, n)) accepted.push_back(jittered);
        else accepted.push_back(s);
    }
    out.spans = std::move(accepted);
    canonical_sort(out);
    return out;
}

}  // namespace wesr
