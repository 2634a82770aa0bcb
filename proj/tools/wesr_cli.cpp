#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wesr/align.hpp"
#include "wesr/corpus.hpp"
#include "wesr/perturb.hpp"
#include "wesr/report.hpp"
#include "wesr/score.hpp"
#include "wesr/transcript.hpp"

namespace {

using wesr::OutputFormat;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitContent = 1;  // validation / strict-parse failure
constexpr int kExitIo = 2;       // I/O or schema failure

struct CommonFlags {
    std::string format = "markdown";
    bool strict = false;
    bool lenient = false;
    std::string lang;
};

wesr::ScoreOptions score_options(const CommonFlags& f) {
    wesr::ScoreOptions opts;
    opts.hyp_mode = f.strict ? wesr::ParseMode::Strict : wesr::ParseMode::Lenient;
    if (!f.lang.empty())
        opts.language_filter = wesr::language_from_string(f.lang);
    return opts;
}

int cmd_score(const std::string& ref_path, const std::string& hyp_path,
              const CommonFlags& flags, bool aggregate, bool kinds) {
    auto refs = wesr::to_ref_utterances(wesr::load_manifest(ref_path));
    auto hyps = wesr::load_hypotheses(hyp_path);
    wesr::ScoreReport report = wesr::score_corpus(refs, hyps, score_options(flags));
    wesr::RenderOptions ropts;
    ropts.aggregate = aggregate;
    ropts.kinds = kinds;
    std::cout << wesr::render_report(
        report, wesr::output_format_from_string(flags.format), ropts);
    return kExitOk;
}

int cmd_stats(const std::string& ref_path, const std::string& format) {
    auto entries = wesr::load_manifest(ref_path);
    wesr::CorpusStats stats = wesr::compute_stats(entries);
    std::cout << wesr::render_stats(stats,
                                    wesr::output_format_from_string(format));
    return kExitOk;
}

int cmd_wer(const std::string& ref_path, const std::string& hyp_path,
            const CommonFlags& flags) {
    auto refs = wesr::load_manifest(ref_path);
    auto hyps = wesr::load_hypotheses(hyp_path);
    wesr::Language lang = flags.lang.empty()
                              ? wesr::Language::Unknown
                              : wesr::language_from_string(flags.lang);

    long long total_dist = 0, total_ref = 0;
    ordered_json utterances = ordered_json::array();
    std::ostringstream md;
    md << "| Id | WER (%) | Errors | Ref tokens |\n|---|---|---|---|\n";
    for (const auto& e : refs) {
        if (!flags.lang.empty() && e.language != lang) continue;
        auto it = hyps.find(e.id);
        std::string hyp_text = it != hyps.end() ? it->second : "";
        auto ref_toks = wesr::tokenize(wesr::strip_tags(e.text), lang);
        auto hyp_toks = wesr::tokenize(wesr::strip_tags(hyp_text), lang);
        long long dist = wesr::edit_distance(ref_toks, hyp_toks);
        long long n = static_cast<long long>(ref_toks.size());
        double u_wer = double(dist) / double(std::max<long long>(1, n));
        total_dist += dist;
        total_ref += n;
        ordered_json u;
        u["id"] = e.id;
        u["wer"] = u_wer;
        u["distance"] = dist;
        u["ref_tokens"] = n;
        utterances.push_back(std::move(u));
        md << "| " << e.id << " | " << wesr::percent(u_wer) << " | " << dist
           << " | " << n << " |\n";
    }
    double corpus_wer =
        double(total_dist) / double(std::max<long long>(1, total_ref));
    if (flags.format == "json") {
        ordered_json j;
        j["corpus_wer"] = corpus_wer;
        j["total_distance"] = total_dist;
        j["total_ref_tokens"] = total_ref;
        j["utterances"] = std::move(utterances);
        std::cout << j.dump(2) << "\n";
    } else {
        md << "| corpus | " << wesr::percent(corpus_wer) << " | " << total_dist
           << " | " << total_ref << " |\n";
        std::cout << md.str();
    }
    return kExitOk;
}

int cmd_validate(const std::string& ref_path) {
    try {
        wesr::load_manifest(ref_path);
    } catch (const wesr::CorpusParseError& e) {
        for (const auto& line : e.ids) std::cerr << line << "\n";
        std::cerr << e.ids.size() << " diagnostics\n";
        return kExitContent;
    }
    std::cout << "0 diagnostics\n";
    return kExitOk;
}

int cmd_align(const std::string& ref_path, const std::string& hyp_path,
              bool debug, const CommonFlags& flags) {
    auto refs = wesr::load_manifest(ref_path);
    auto hyps = wesr::load_hypotheses(hyp_path);
    wesr::ParseMode mode =
        flags.strict ? wesr::ParseMode::Strict : wesr::ParseMode::Lenient;
    for (const auto& e : refs) {
        auto ref_t = wesr::parse(e.text, wesr::ParseMode::Strict).transcript;
        auto it = hyps.find(e.id);
        wesr::AnnotatedTranscript hyp_t;
        if (it != hyps.end())
            hyp_t = wesr::parse(it->second, mode).transcript;
        wesr::AlignmentResult ar = wesr::event_preserving_align(hyp_t, ref_t.words);
        if (debug) {
            std::cout << "# " << e.id << "\n" << wesr::debug_trace(hyp_t, ar);
        }
        ordered_json j;
        j["id"] = e.id;
        j["text"] = wesr::serialize(ar.aligned);
        std::cout << j.dump() << "\n";
    }
    return kExitOk;
}

int cmd_normalize(const std::string& from, const std::string& ref_path,
                  const std::string& mapping_path) {
    wesr::Dataset dataset = wesr::dataset_from_string(from);
    wesr::ExternalMapping mapping = wesr::ExternalMapping::defaults();
    if (!mapping_path.empty()) {
        std::ifstream in(mapping_path);
        if (!in) throw wesr::IoError("cannot open mapping file: " + mapping_path);
        mapping.apply_overrides(in);
    }
    // external records reuse the manifest line schema but skip strict
    // validation of their (foreign-taxonomy) tags
    std::ifstream in(ref_path);
    if (!in) throw wesr::IoError("cannot open input: " + ref_path);
    std::vector<wesr::ManifestEntry> records;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const ordered_json::parse_error& e) {
            throw wesr::SchemaError("line " + std::to_string(lineno) +
                                        ": invalid JSON: " + e.what(),
                                    lineno);
        }
        if (!j.contains("id") || !j.contains("text"))
            throw wesr::SchemaError(
                "line " + std::to_string(lineno) + ": missing id/text", lineno);
        wesr::ManifestEntry e;
        e.id = j["id"].get<std::string>();
        e.text = j["text"].get<std::string>();
        if (j.contains("language"))
            e.language =
                wesr::language_from_string(j["language"].get<std::string>());
        records.push_back(std::move(e));
    }
    wesr::NormalizeResult result =
        wesr::normalize_external(dataset, records, mapping);
    for (const auto& e : result.entries) {
        ordered_json j;
        j["id"] = e.id;
        j["text"] = e.text;
        j["language"] = std::string(wesr::language_name(e.language));
        std::cout << j.dump() << "\n";
    }
    for (const auto& x : result.excluded) {
        ordered_json j;
        j["id"] = x.id;
        j["reason"] = x.reason;
        j["raw_tag"] = x.raw_tag;
        std::cerr << j.dump() << "\n";
    }
    return kExitOk;
}

int cmd_perturb(const std::string& ref_path, std::uint64_t seed,
                double sub_rate, double ins_rate, double del_rate,
                double tag_drop, int gap_shift, int span_jitter) {
    auto refs = wesr::load_manifest(ref_path);
    wesr::PerturbSpec spec;
    spec.substitution_rate = sub_rate;
    spec.insertion_rate = ins_rate;
    spec.deletion_rate = del_rate;
    spec.tag_drop = tag_drop;
    spec.gap_offsets.clear();
    for (int o = -gap_shift; o <= gap_shift; ++o) spec.gap_offsets.push_back(o);
    spec.span_deltas.clear();
    for (int o = -span_jitter; o <= span_jitter; ++o)
        spec.span_deltas.push_back(o);
    for (const auto& e : refs) {
        auto t = wesr::parse(e.text, wesr::ParseMode::Strict).transcript;
        spec.seed = wesr::derive_seed(seed, e.id);
        auto words_done = wesr::perturb_words(t, spec);
        auto done = wesr::perturb_tags(words_done, spec);
        ordered_json j;
        j["id"] = e.id;
        j["text"] = wesr::serialize(done);
        std::cout << j.dump() << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"WESR transcript scoring toolkit"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string ref_path, hyp_path, from, mapping_path;
    bool aggregate = false, kinds = false, debug = false;
    std::uint64_t seed = 0;
    double sub_rate = 0.1, ins_rate = 0.05, del_rate = 0.05, tag_drop = 0.0;
    int gap_shift = 0, span_jitter = 0;

    auto add_common = [&](CLI::App* cmd, bool with_hyp) {
        cmd->add_option("--ref", ref_path, "Reference manifest (JSONL)")
            ->required();
        if (with_hyp)
            cmd->add_option("--hyp", hyp_path, "Hypothesis file (JSONL)")
                ->required();
        cmd->add_option("--format", flags.format,
                        "Output format: json, markdown, csv");
        cmd->add_flag("--strict", flags.strict, "Fail on hypothesis parse diagnostics");
        cmd->add_flag("--lenient", flags.lenient,
                      "Repair hypothesis parse issues (default)");
        cmd->add_option("--lang", flags.lang, "Filter by language (en|zh)");
    };

    CLI::App* score = app.add_subcommand("score", "Score hypotheses against a manifest");
    add_common(score, true);
    score->add_flag("--aggregate", aggregate, "Add category-aggregated section");
    score->add_flag("--kinds", kinds, "Add discrete/continuous split section");

    CLI::App* stats = app.add_subcommand("stats", "Corpus statistics");
    stats->add_option("--ref", ref_path, "Manifest (JSONL)")->required();
    stats->add_option("--format", flags.format, "Output format");

    CLI::App* wer_cmd = app.add_subcommand("wer", "Tag-stripped word error rate");
    add_common(wer_cmd, true);

    CLI::App* validate = app.add_subcommand("validate", "Strict-validate a manifest");
    validate->add_option("--ref", ref_path, "Manifest (JSONL)")->required();

    CLI::App* align = app.add_subcommand("align", "Event-preserving alignment");
    add_common(align, true);
    align->add_flag("--debug", debug, "Print per-op trace");

    CLI::App* normalize =
        app.add_subcommand("normalize", "Map external dataset tags into the taxonomy");
    normalize->add_option("--ref", ref_path, "External records (JSONL)")->required();
    normalize
        ->add_option("--from", from,
                     "Source dataset: nonverbaltts, nvspeech170k, "
                     "nonverbalspeech38k, smiipnv, synparaspeech, mnv17")
        ->required();
    normalize->add_option("--mapping", mapping_path, "Mapping override file");

    CLI::App* perturb = app.add_subcommand("perturb", "Generate synthetic hypotheses");
    perturb->add_option("--ref", ref_path, "Manifest (JSONL)")->required();
    perturb->add_option("--seed", seed, "Random seed");
    perturb->add_option("--sub-rate", sub_rate, "Word substitution rate");
    perturb->add_option("--ins-rate", ins_rate, "Word insertion rate");
    perturb->add_option("--del-rate", del_rate, "Word deletion rate");
    perturb->add_option("--tag-drop", tag_drop, "Event drop probability");
    perturb->add_option("--gap-shift", gap_shift, "Max discrete gap shift");
    perturb->add_option("--span-jitter", span_jitter, "Max span endpoint jitter");

    CLI11_PARSE(app, argc, argv);

    try {
        if (score->parsed())
            return cmd_score(ref_path, hyp_path, flags, aggregate, kinds);
        if (stats->parsed()) return cmd_stats(ref_path, flags.format);
        if (wer_cmd->parsed()) return cmd_wer(ref_path, hyp_path, flags);
        if (validate->parsed()) return cmd_validate(ref_path);
        if (align->parsed()) return cmd_align(ref_path, hyp_path, debug, flags);
        if (normalize->parsed())
            return cmd_normalize(from, ref_path, mapping_path);
        if (perturb->parsed())
            return cmd_perturb(ref_path, seed, sub_rate, ins_rate, del_rate,
                               tag_drop, gap_shift, span_jitter);
    } catch (const wesr::CorpusParseError& e) {
        std::cerr << e.what() << "\n";
        for (const auto& id : e.ids) std::cerr << id << "\n";
        return kExitContent;
    } catch (const wesr::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitContent;
    } catch (const wesr::SchemaError& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    } catch (const wesr::IoError& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    } catch (const wesr::DuplicateIdError& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    } catch (const wesr::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitContent;
    }
    return kExitOk;
}
