#ifndef WESR_REPORT_HPP
#define WESR_REPORT_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "wesr/corpus.hpp"
#include "wesr/score.hpp"

namespace wesr {

enum class OutputFormat { Json, Markdown, Csv };

OutputFormat output_format_from_string(std::string_view s);

struct RenderOptions {
    bool aggregate = false;  // Table-5-shaped category section
    bool kinds = false;      // discrete/continuous split section
};

// Canonical machine-readable document: stable key order and formatting,
// so parse + re-dump round-trips byte-identically.
nlohmann::ordered_json report_to_json(const ScoreReport& report);
std::string render_report(const ScoreReport& report, OutputFormat format,
                          const RenderOptions& opts = {});

nlohmann::ordered_json stats_to_json(const CorpusStats& stats);
std::string render_stats(const CorpusStats& stats, OutputFormat format);

// One decimal place, Table-3 style ("85.7").
std::string percent(double fraction);

}  // namespace wesr

#endif  // WESR_REPORT_HPP
