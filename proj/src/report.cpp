#include "wesr/report.hpp"

#include <cstdio>
#include <sstream>

namespace wesr {

using ordered_json = nlohmann::ordered_json;

OutputFormat output_format_from_string(std::string_view s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "markdown") return OutputFormat::Markdown;
    if (s == "csv") return OutputFormat::Csv;
    throw Error("unknown output format: " + std::string(s));
}

std::string percent(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", fraction * 100.0);
    return buf;
}

namespace {

ordered_json prf_json(const Counts& c) {
    PRF prf = prf_from(c);
    ordered_json j;
    j["tp"] = c.tp;
    j["fp"] = c.fp;
    j["fn"] = c.fn;
    j["p"] = prf.precision;
    j["r"] = prf.recall;
    j["f1"] = prf.f1;
    return j;
}

Counts summed(const ConfusionCounts& counts) {
    Counts total;
    for (const auto& [tag, c] : counts.per_tag) total += c;
    return total;
}

}  // namespace

ordered_json report_to_json(const ScoreReport& report) {
    ordered_json j;
    j["utterances"] = report.utterances;

    ordered_json tags = ordered_json::object();
    for (const EventTag& t : taxonomy::all_tags()) {
        auto it = report.tags.per_tag.find(t.id);
        if (it == report.tags.per_tag.end()) continue;
        const Counts& c = it->second;
        if (c.tp + c.fp + c.fn == 0) continue;
        tags[std::string(t.name)] = prf_json(c);
    }
    j["tags"] = std::move(tags);

    Counts total = summed(report.tags);
    if (total.tp + total.fn > 0) {
        j["micro"] = prf_json(total);
        PRF m = macro(report.tags);
        ordered_json mj;
        mj["p"] = m.precision;
        mj["r"] = m.recall;
        mj["f1"] = m.f1;
        j["macro"] = std::move(mj);
    } else {
        j["micro"] = nullptr;
        j["macro"] = nullptr;
    }

    ordered_json cats = ordered_json::object();
    for (Category c : kAllCategories) {
        auto it = report.categories.find(c);
        if (it == report.categories.end()) continue;
        if (it->second.tp + it->second.fp + it->second.fn == 0) continue;
        cats[std::string(category_name(c))] = prf_json(it->second);
    }
    j["categories"] = std::move(cats);

    KindScores ks = kind_split(report.tags);
    ordered_json kinds;
    kinds["discrete"] = prf_json(ks.discrete);
    kinds["discrete"]["no_reference_events"] = !ks.discrete_has_reference;
    kinds["continuous"] = prf_json(ks.continuous);
    kinds["continuous"]["no_reference_events"] = !ks.continuous_has_reference;
    j["kinds"] = std::move(kinds);

    ordered_json diag;
    diag["missing_hypotheses"] = report.missing_hypotheses;
    diag["unmatched_hypotheses"] = report.unmatched_hypotheses;
    ordered_json parses = ordered_json::array();
    for (const auto& [id, d] : report.parse_diagnostics) {
        ordered_json p;
        p["id"] = id;
        p["kind"] = std::string(diagnostic_kind_name(d.kind));
        p["offset"] = d.offset;
        p["message"] = d.message;
        parses.push_back(std::move(p));
    }
    diag["parse"] = std::move(parses);
    j["diagnostics"] = std::move(diag);
    return j;
}

namespace {

void markdown_prf_row(std::ostringstream& os, const std::string& label,
                      const Counts& c) {
    PRF prf = prf_from(c);
    os << "| " << label << " | " << percent(prf.precision) << " | "
       << percent(prf.recall) << " | " << percent(prf.f1) << " |\n";
}

std::string report_markdown(const ScoreReport& report,
                            const RenderOptions& opts) {
    std::ostringstream os;
    os << "| Tag | P (%) | R (%) | F1 (%) |\n";
    os << "|---|---|---|---|\n";
    for (const EventTag& t : taxonomy::all_tags()) {
        auto it = report.tags.per_tag.find(t.id);
        if (it == report.tags.per_tag.end()) continue;
        if (it->second.tp + it->second.fp + it->second.fn == 0) continue;
        markdown_prf_row(os, taxonomy::render(t), it->second);
    }
    Counts total = summed(report.tags);
    if (total.tp + total.fn > 0) {
        markdown_prf_row(os, "Micro avg.", total);
        PRF m = macro(report.tags);
        os << "| Macro avg. | " << percent(m.precision) << " | "
           << percent(m.recall) << " | " << percent(m.f1) << " |\n";
    } else {
        os << "| Micro avg. | - | - | - |\n";
    }
    if (opts.aggregate) {
        os << "\n| Aggr. Tag | P (%) | R (%) | F1 (%) |\n";
        os << "|---|---|---|---|\n";
        for (Category c : kAllCategories) {
            auto it = report.categories.find(c);
            if (it == report.categories.end()) continue;
            if (it->second.tp + it->second.fp + it->second.fn == 0) continue;
            markdown_prf_row(os, std::string(category_name(c)), it->second);
        }
    }
    if (opts.kinds) {
        KindScores ks = kind_split(report.tags);
        os << "\n| Kind | P (%) | R (%) | F1 (%) |\n";
        os << "|---|---|---|---|\n";
        if (ks.discrete_has_reference || ks.discrete.fp > 0)
            markdown_prf_row(os, "discrete", ks.discrete);
        else
            os << "| discrete | - | - | - |\n";
        if (ks.continuous_has_reference || ks.continuous.fp > 0)
            markdown_prf_row(os, "continuous", ks.continuous);
        else
            os << "| continuous | - | - | - |\n";
    }
    if (!report.missing_hypotheses.empty())
        os << "\nMissing hypotheses: " << report.missing_hypotheses.size()
           << "\n";
    if (!report.unmatched_hypotheses.empty())
        os << "Unmatched hypotheses: " << report.unmatched_hypotheses.size()
           << "\n";
    return os.str();
}

std::string report_csv(const ScoreReport& report) {
    std::ostringstream os;
    os << "tag,tp,fp,fn,p,r,f1\n";
    auto row = [&](const std::string& label, const Counts& c) {
        PRF prf = prf_from(c);
        os << label << "," << c.tp << "," << c.fp << "," << c.fn << ","
           << percent(prf.precision) << "," << percent(prf.recall) << ","
           << percent(prf.f1) << "\n";
    };
    for (const EventTag& t : taxonomy::all_tags()) {
        auto it = report.tags.per_tag.find(t.id);
        if (it == report.tags.per_tag.end()) continue;
        if (it->second.tp + it->second.fp + it->second.fn == 0) continue;
        row(std::string(t.name), it->second);
    }
    Counts total = summed(report.tags);
    if (total.tp + total.fn > 0) {
        row("micro", total);
        PRF m = macro(report.tags);
        os << "macro,,,," << percent(m.precision) << "," << percent(m.recall)
           << "," << percent(m.f1) << "\n";
    }
    return os.str();
}

}  // namespace

std::string render_report(const ScoreReport& report, OutputFormat format,
                          const RenderOptions& opts) {
    switch (format) {
        case OutputFormat::Json: return report_to_json(report).dump(2) + "\n";
        case OutputFormat::Markdown: return report_markdown(report, opts);
        case OutputFormat::Csv: return report_csv(report);
    }
    return "";
}

ordered_json stats_to_json(const CorpusStats& stats) {
    ordered_json j;
    j["entries"] = stats.entries;
    j["utterances"] = stats.utterances;
    j["total_occurrences"] = stats.total_occurrences;
    auto pct2 = [](long long n, long long denom) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f",
                      denom > 0 ? 100.0 * double(n) / double(denom) : 0.0);
        return std::string(buf);
    };
    auto histogram = [&](const TagHistogram& h, long long denom) {
        ordered_json out;
        out["1"] = h.buckets[0];
        out["2"] = h.buckets[1];
        out["3+"] = h.buckets[2];
        ordered_json pct;
        pct["1"] = pct2(h.buckets[0], denom);
        pct["2"] = pct2(h.buckets[1], denom);
        pct["3+"] = pct2(h.buckets[2], denom);
        out["percent"] = std::move(pct);
        return out;
    };
    j["total_tags"] = histogram(stats.total_tags, stats.utterances);
    j["unique_tags"] = histogram(stats.unique_tags, stats.utterances);
    j["continuous_occurrences"] = stats.continuous_occurrences;
    j["discrete_occurrences"] = stats.discrete_occurrences;
    j["continuous_share_percent"] = percent(stats.continuous_share());
    j["discrete_share_percent"] =
        percent(stats.total_occurrences > 0
                    ? double(stats.discrete_occurrences) /
                          double(stats.total_occurrences)
                    : 0.0);
    ordered_json per_tag = ordered_json::object();
    for (const EventTag& t : taxonomy::all_tags()) {
        auto it = stats.per_tag.find(t.id);
        if (it == stats.per_tag.end()) continue;
        per_tag[std::string(t.name)] = it->second;
    }
    j["per_tag"] = std::move(per_tag);
    ordered_json langs = ordered_json::object();
    for (const auto& [lang, n] : stats.utterances_by_language)
        langs[std::string(language_name(lang))] = n;
    j["utterances_by_language"] = std::move(langs);
    if (stats.has_durations) {
        ordered_json durs = ordered_json::object();
        for (const auto& [lang, d] : stats.duration_by_language)
            durs[std::string(language_name(lang))] = d;
        j["duration_by_language"] = std::move(durs);
    }
    return j;
}

std::string render_stats(const CorpusStats& stats, OutputFormat format) {
    if (format == OutputFormat::Json) return stats_to_json(stats).dump(2) + "\n";
    std::ostringstream os;
    if (format == OutputFormat::Csv) {
        os << "metric,value\n";
        os << "entries," << stats.entries << "\n";
        os << "utterances," << stats.utterances << "\n";
        os << "total_occurrences," << stats.total_occurrences << "\n";
        os << "total_tags_1," << stats.total_tags.buckets[0] << "\n";
        os << "total_tags_2," << stats.total_tags.buckets[1] << "\n";
        os << "total_tags_3plus," << stats.total_tags.buckets[2] << "\n";
        os << "unique_tags_1," << stats.unique_tags.buckets[0] << "\n";
        os << "unique_tags_2," << stats.unique_tags.buckets[1] << "\n";
        os << "unique_tags_3plus," << stats.unique_tags.buckets[2] << "\n";
        os << "continuous_share," << percent(stats.continuous_share()) << "\n";
        for (const EventTag& t : taxonomy::all_tags()) {
            auto it = stats.per_tag.find(t.id);
            if (it == stats.per_tag.end()) continue;
            os << "tag_" << t.name << "," << it->second << "\n";
        }
        return os.str();
    }
    // markdown, Table-2 shaped
    long long u = stats.utterances;
    auto pct = [&](long long n) {
        return u > 0 ? percent(double(n) / double(u)) : std::string("0.0");
    };
    os << "Utterances: " << u << " (of " << stats.entries << " entries)\n";
    os << "Tag occurrences: " << stats.total_occurrences << " ("
       << percent(stats.continuous_share()) << "% continuous / "
       << percent(stats.total_occurrences > 0
                      ? double(stats.discrete_occurrences) /
                            double(stats.total_occurrences)
                      : 0.0)
       << "% discrete)\n\n";
    os << "| Metric | # Tags | # Utt. | % |\n";
    os << "|---|---|---|---|\n";
    os << "| Total Tags | 1 | " << stats.total_tags.buckets[0] << " | "
       << pct(stats.total_tags.buckets[0]) << " |\n";
    os << "| Total Tags | 2 | " << stats.total_tags.buckets[1] << " | "
       << pct(stats.total_tags.buckets[1]) << " |\n";
    os << "| Total Tags | 3+ | " << stats.total_tags.buckets[2] << " | "
       << pct(stats.total_tags.buckets[2]) << " |\n";
    os << "| Unique Tags | 1 | " << stats.unique_tags.buckets[0] << " | "
       << pct(stats.unique_tags.buckets[0]) << " |\n";
    os << "| Unique Tags | 2 | " << stats.unique_tags.buckets[1] << " | "
       << pct(stats.unique_tags.buckets[1]) << " |\n";
    os << "| Unique Tags | 3+ | " << stats.unique_tags.buckets[2] << " | "
       << pct(stats.unique_tags.buckets[2]) << " |\n\n";
    os << "| Tag | Count |\n|---|---|\n";
    for (const EventTag& t : taxonomy::all_tags()) {
        auto it = stats.per_tag.find(t.id);
        if (it == stats.per_tag.end()) continue;
        os << "| " << taxonomy::render(t) << " | " << it->second << " |\n";
    }
    return os.str();
}

}  // namespace wesr
