#include "wesr/score.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wesr {

PositionSet positions_of(const AnnotatedTranscript& t) {
    PositionSet out;
    for (const DiscreteEvent& d : t.discrete) out.insert({2 * d.gap, d.tag});
    for (const SpanEvent& s : t.spans)
        for (int i = s.start; i <= s.end; ++i) out.insert({2 * i + 1, s.tag});
    return out;
}

ConfusionCounts count(const PositionSet& ref_positions,
                      const PositionSet& hyp_positions) {
    ConfusionCounts out;
    for (const auto& p : ref_positions) {
        if (hyp_positions.count(p)) ++out.per_tag[p.second].tp;
        else ++out.per_tag[p.second].fn;
    }
    for (const auto& p : hyp_positions)
        if (!ref_positions.count(p)) ++out.per_tag[p.second].fp;
    return out;
}

namespace {

std::set<std::pair<int, int>> relabel_with_category(const PositionSet& s) {
    std::set<std::pair<int, int>> out;
    for (const auto& [pos, tag] : s)
        out.insert({pos, static_cast<int>(taxonomy::by_id(tag).category)});
    return out;
}

}  // namespace

std::map<Category, Counts> count_by_category(const PositionSet& ref_positions,
                                             const PositionSet& hyp_positions) {
    auto ref = relabel_with_category(ref_positions);
    auto hyp = relabel_with_category(hyp_positions);
    std::map<Category, Counts> out;
    for (const auto& p : ref) {
        if (hyp.count(p)) ++out[static_cast<Category>(p.second)].tp;
        else ++out[static_cast<Category>(p.second)].fn;
    }
    for (const auto& p : hyp)
        if (!ref.count(p)) ++out[static_cast<Category>(p.second)].fp;
    return out;
}

PRF prf_from(const Counts& c) {
    PRF r;
    r.precision = (c.tp + c.fp) > 0 ? double(c.tp) / double(c.tp + c.fp) : 0.0;
    r.recall = (c.tp + c.fn) > 0 ? double(c.tp) / double(c.tp + c.fn) : 0.0;
    double denom = r.precision + r.recall;
    r.f1 = denom > 0 ? 2.0 * r.precision * r.recall / denom : 0.0;
    return r;
}

PRF micro(const ConfusionCounts& counts) {
    Counts total;
    for (const auto& [tag, c] : counts.per_tag) total += c;
    if (total.tp + total.fn == 0)
        throw NoReferenceEventsError("no reference events to score");
    return prf_from(total);
}

PRF macro(const ConfusionCounts& counts) {
    double p = 0, r = 0, f = 0;
    int n = 0;
    for (const auto& [tag, c] : counts.per_tag) {
        if (c.tp + c.fp + c.fn == 0) continue;
        PRF prf = prf_from(c);
        p += prf.precision;
        r += prf.recall;
        f += prf.f1;
        ++n;
    }
    if (n == 0) throw NoReferenceEventsError("no scored tags for macro average");
    return {p / n, r / n, f / n};
}

std::map<Category, Counts> aggregate_by_category(const ConfusionCounts& counts) {
    std::map<Category, Counts> out;
    for (const auto& [tag, c] : counts.per_tag)
        out[taxonomy::by_id(tag).category] += c;
    return out;
}

KindScores kind_split(const ConfusionCounts& counts) {
    KindScores out;
    for (const auto& [tag, c] : counts.per_tag) {
        if (taxonomy::by_id(tag).kind == EventKind::Discrete) out.discrete += c;
        else out.continuous += c;
    }
    out.discrete_has_reference = out.discrete.tp + out.discrete.fn > 0;
    out.continuous_has_reference = out.continuous.tp + out.continuous.fn > 0;
    return out;
}

long long edit_distance(const std::vector<std::string>& a,
                        const std::vector<std::string>& b) {
    const size_t n = a.size(), m = b.size();
    std::vector<long long> prev(m + 1), cur(m + 1);
    std::iota(prev.begin(), prev.end(), 0LL);
    for (size_t i = 1; i <= n; ++i) {
        cur[0] = static_cast<long long>(i);
        for (size_t j = 1; j <= m; ++j) {
            long long sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

double wer(std::string_view ref_text, std::string_view hyp_text,
           Language language) {
    auto ref = tokenize(strip_tags(ref_text), language);
    auto hyp = tokenize(strip_tags(hyp_text), language);
    long long dist = edit_distance(ref, hyp);
    return double(dist) / double(std::max<size_t>(1, ref.size()));
}

void ScoreReport::merge(const ScoreReport& o) {
    tags.merge(o.tags);
    for (const auto& [cat, c] : o.categories) categories[cat] += c;
    utterances += o.utterances;
    missing_hypotheses.insert(missing_hypotheses.end(),
                              o.missing_hypotheses.begin(),
                              o.missing_hypotheses.end());
    unmatched_hypotheses.insert(unmatched_hypotheses.end(),
                                o.unmatched_hypotheses.begin(),
                                o.unmatched_hypotheses.end());
    parse_diagnostics.insert(parse_diagnostics.end(),
                             o.parse_diagnostics.begin(),
                             o.parse_diagnostics.end());
}

namespace {

struct UtteranceOutcome {
    ScoreReport report;
    std::optional<std::string> parse_failure;  // message, strict mode only
};

UtteranceOutcome score_one(const RefUtterance& ref, const std::string* hyp_text,
                           const ScoreOptions& opts) {
    UtteranceOutcome out;
    AnnotatedTranscript ref_t;
    try {
        ref_t = parse(ref.text, ParseMode::Strict).transcript;
    } catch (const ParseError& e) {
        out.parse_failure = "reference " + ref.id + ": " + e.what();
        return out;
    }

    AnnotatedTranscript hyp_t;
    if (hyp_text) {
        try {
            ParseResult pr = parse(*hyp_text, opts.hyp_mode);
            hyp_t = std::move(pr.transcript);
            for (auto& d : pr.diagnostics)
                out.report.parse_diagnostics.emplace_back(ref.id, std::move(d));
        } catch (const ParseError& e) {
            out.parse_failure = "hypothesis " + ref.id + ": " + e.what();
            return out;
        }
    } else {
        out.report.missing_hypotheses.push_back(ref.id);
    }

    AlignmentResult ar = event_preserving_align(hyp_t, ref_t.words);
    PositionSet ref_pos = positions_of(ref_t);
    PositionSet hyp_pos = positions_of(ar.aligned);
    out.report.tags = count(ref_pos, hyp_pos);
    out.report.categories = count_by_category(ref_pos, hyp_pos);
    out.report.utterances = 1;
    return out;
}

ScoreReport fold_outcomes(const std::vector<RefUtterance>& refs,
                          const std::map<std::string, std::string>& hyps,
                          std::vector<UtteranceOutcome>&& outcomes) {
    ScoreReport total;
    std::vector<std::string> failures;
    for (auto& o : outcomes) {
        if (o.parse_failure) failures.push_back(*o.parse_failure);
        else total.merge(o.report);
    }
    if (!failures.empty()) {
        std::string msg = std::to_string(failures.size()) +
                          " utterance(s) failed to parse";
        throw CorpusParseError(std::move(msg), std::move(failures));
    }
    std::set<std::string> ref_ids;
    for (const auto& r : refs) ref_ids.insert(r.id);
    for (const auto& [id, text] : hyps)
        if (!ref_ids.count(id)) total.unmatched_hypotheses.push_back(id);
    return total;
}

std::vector<RefUtterance> apply_filter(const std::vector<RefUtterance>& refs,
                                       const ScoreOptions& opts) {
    std::set<std::string> seen;
    std::vector<RefUtterance> out;
    for (const auto& r : refs) {
        if (!seen.insert(r.id).second)
            throw DuplicateIdError("duplicate reference id: " + r.id);
        if (opts.language_filter && r.language != *opts.language_filter)
            continue;
        out.push_back(r);
    }
    return out;
}

}  // namespace

ScoreReport score_corpus_serial(const std::vector<RefUtterance>& refs,
                                const std::map<std::string, std::string>& hyps,
                                const ScoreOptions& opts) {
    auto filtered = apply_filter(refs, opts);
    std::vector<UtteranceOutcome> outcomes(filtered.size());
    for (size_t i = 0; i < filtered.size(); ++i) {
        auto it = hyps.find(filtered[i].id);
        outcomes[i] =
            score_one(filtered[i], it == hyps.end() ? nullptr : &it->second, opts);
    }
    return fold_outcomes(refs, hyps, std::move(outcomes));
}

ScoreReport score_corpus(const std::vector<RefUtterance>& refs,
                         const std::map<std::string, std::string>& hyps,
                         const ScoreOptions& opts) {
    if (!opts.parallel) return score_corpus_serial(refs, hyps, opts);
    auto filtered = apply_filter(refs, opts);
    std::vector<UtteranceOutcome> outcomes(filtered.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < static_cast<long long>(filtered.size()); ++i) {
        const auto& ref = filtered[static_cast<size_t>(i)];
        auto it = hyps.find(ref.id);
        outcomes[static_cast<size_t>(i)] =
            score_one(ref, it == hyps.end() ? nullptr : &it->second, opts);
    }
    return fold_outcomes(refs, hyps, std::move(outcomes));
}

}  // namespace wesr
