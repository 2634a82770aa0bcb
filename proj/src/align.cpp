#include "wesr/align.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <sstream>

namespace wesr {

std::string_view edit_kind_name(EditKind k) {
    switch (k) {
        case EditKind::Equal: return "Equal";
        case EditKind::Insert: return "Insert";
        case EditKind::Delete: return "Delete";
        case EditKind::Replace: return "Replace";
    }
    return "?";
}

namespace {

struct Block {
    int a, b, size;
};

// Longest matching block within a[alo,ahi) x b[blo,bhi), difflib
// semantics without the junk heuristic. Strict improvement plus ascending
// scan order yields earliest-in-a then earliest-in-b tie-breaking.
Block longest_match(const std::vector<std::string>& a,
                    const std::map<std::string, std::vector<int>>& b2j,
                    int alo, int ahi, int blo, int bhi) {
    Block best{alo, blo, 0};
    std::map<int, int> j2len;
    for (int i = alo; i < ahi; ++i) {
        std::map<int, int> newj2len;
        auto it = b2j.find(a[i]);
        if (it != b2j.end()) {
            for (int j : it->second) {
                if (j < blo) continue;
                if (j >= bhi) break;
                int k = 1;
                if (auto p = j2len.find(j - 1); p != j2len.end()) k = p->second + 1;
                newj2len[j] = k;
                if (k > best.size) best = {i - k + 1, j - k + 1, k};
            }
        }
        j2len = std::move(newj2len);
    }
    return best;
}

}  // namespace

std::vector<EditOp> diff_opcodes(const std::vector<std::string>& a,
                                 const std::vector<std::string>& b) {
    std::map<std::string, std::vector<int>> b2j;
    for (int j = 0; j < static_cast<int>(b.size()); ++j)
        b2j[b[j]].push_back(j);

    std::vector<Block> blocks;
    std::vector<std::array<int, 4>> queue{
        {0, static_cast<int>(a.size()), 0, static_cast<int>(b.size())}};
    while (!queue.empty()) {
        auto [alo, ahi, blo, bhi] = queue.back();
        queue.pop_back();
        Block m = longest_match(a, b2j, alo, ahi, blo, bhi);
        if (m.size > 0) {
            blocks.push_back(m);
            if (alo < m.a && blo < m.b) queue.push_back({alo, m.a, blo, m.b});
            if (m.a + m.size < ahi && m.b + m.size < bhi)
                queue.push_back({m.a + m.size, ahi, m.b + m.size, bhi});
        }
    }
    std::sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    // fuse adjacent blocks
    std::vector<Block> fused;
    for (const Block& blk : blocks) {
        if (!fused.empty() && fused.back().a + fused.back().size == blk.a &&
            fused.back().b + fused.back().size == blk.b)
            fused.back().size += blk.size;
        else
            fused.push_back(blk);
    }
    fused.push_back({static_cast<int>(a.size()), static_cast<int>(b.size()), 0});

    std::vector<EditOp> ops;
    int i = 0, j = 0;
    for (const Block& blk : fused) {
        if (i < blk.a && j < blk.b)
            ops.push_back({EditKind::Replace, i, blk.a, j, blk.b});
        else if (i < blk.a)
            ops.push_back({EditKind::Delete, i, blk.a, j, j});
        else if (j < blk.b)
            ops.push_back({EditKind::Insert, i, i, j, blk.b});
        if (blk.size > 0)
            ops.push_back({EditKind::Equal, blk.a, blk.a + blk.size, blk.b,
                           blk.b + blk.size});
        i = blk.a + blk.size;
        j = blk.b + blk.size;
    }
    return ops;
}

int relocate_gap(int rel_gap, int old_len, int new_len) {
    if (old_len <= 0) return 0;
    long long num = 2LL * rel_gap * new_len + old_len;
    return static_cast<int>(num / (2LL * old_len));
}

namespace {

// Maps a hypothesis gap to a reference gap through the opcode list.
int map_gap(const std::vector<EditOp>& ops, int g) {
    for (const EditOp& op : ops) {
        if (g < op.h_begin || g > op.h_end) continue;
        switch (op.kind) {
            case EditKind::Equal:
                return op.r_begin + (g - op.h_begin);
            case EditKind::Delete:
            case EditKind::Insert:
                return op.r_begin;
            case EditKind::Replace:
                return op.r_begin + relocate_gap(g - op.h_begin,
                                                 op.h_end - op.h_begin,
                                                 op.r_end - op.r_begin);
        }
    }
    return 0;  // unreachable for gaps in range
}

// Surviving reference word range for one span, or nullopt when every word
// carrying it was edited away.
std::optional<std::pair<int, int>> map_span_hull(const std::vector<EditOp>& ops,
                                                 int s, int e) {
    int lo = -1, hi = -1;
    auto extend = [&](int w0, int w1) {
        if (lo < 0 || w0 < lo) lo = w0;
        if (w1 > hi) hi = w1;
    };
    for (const EditOp& op : ops) {
        int a = std::max(s, op.h_begin);
        int b = std::min(e, op.h_end - 1);
        if (a > b) continue;
        switch (op.kind) {
            case EditKind::Equal:
                extend(op.r_begin + (a - op.h_begin), op.r_begin + (b - op.h_begin));
                break;
            case EditKind::Delete:
            case EditKind::Insert:
                break;
            case EditKind::Replace: {
                int m = op.h_end - op.h_begin;
                int n = op.r_end - op.r_begin;
                if (n == 0) break;
                int g1 = relocate_gap(a - op.h_begin, m, n);
                int g2 = relocate_gap(b + 1 - op.h_begin, m, n);
                if (g1 == g2) {
                    int w = op.r_begin + std::min(g1, n - 1);
                    extend(w, w);
                } else {
                    extend(op.r_begin + g1, op.r_begin + g2 - 1);
                }
                break;
            }
        }
    }
    if (lo < 0) return std::nullopt;
    return std::make_pair(lo, hi);
}

// Deterministic repair of structural violations that a shrinking edit can
// introduce: crossing distinct-tag spans and overlapping same-tag spans.
// Counts are preserved except when a span has nowhere left to live.
void repair_spans(std::vector<SpanEvent>& spans, int ref_n) {
    auto canonical = [](const SpanEvent& a, const SpanEvent& b) {
        if (a.start != b.start) return a.start < b.start;
        if (a.end != b.end) return a.end > b.end;
        return a.tag < b.tag;
    };
    for (int pass = 0; pass < 8; ++pass) {
        std::sort(spans.begin(), spans.end(), canonical);
        bool changed = false;
        for (size_t i = 0; i < spans.size() && !changed; ++i) {
            for (size_t j = i + 1; j < spans.size() && !changed; ++j) {
                SpanEvent& a = spans[i];
                SpanEvent& b = spans[j];
                bool same_tag = a.tag == b.tag;
                bool overlap = a.start <= b.end && b.start <= a.end;
                bool cross = a.start < b.start && b.start <= a.end && a.end < b.end;
                if (same_tag && overlap) {
                    if (a.end + 1 <= ref_n - 1) {
                        b.start = a.end + 1;
                        b.end = std::max(b.end, b.start);
                    } else {
                        a.end = std::max(a.end, b.end);
                        spans.erase(spans.begin() + static_cast<long>(j));
                    }
                    changed = true;
                } else if (cross) {
                    b.start = a.end + 1;  // b.end > a.end, stays non-empty
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
    std::sort(spans.begin(), spans.end(), canonical);
}

}  // namespace

AlignmentResult event_preserving_align(const AnnotatedTranscript& hyp,
                                       const std::vector<std::string>& ref_words) {
    AlignmentResult result;
    result.ops = diff_opcodes(hyp.words, ref_words);
    const int ref_n = static_cast<int>(ref_words.size());

    for (const EditOp& op : result.ops) {
        int m = op.h_end - op.h_begin;
        int n = op.r_end - op.r_begin;
        switch (op.kind) {
            case EditKind::Equal: break;
            case EditKind::Insert: result.counts.insertions += n; break;
            case EditKind::Delete: result.counts.deletions += m; break;
            case EditKind::Replace:
                result.counts.substitutions += std::min(m, n);
                if (m > n) result.counts.deletions += m - n;
                else result.counts.insertions += n - m;
                break;
        }
    }

    AnnotatedTranscript& out = result.aligned;
    out.words = ref_words;
    out.language = hyp.language != Language::Unknown
                       ? hyp.language
                       : detect_language([&] {
                             std::string joined;
                             for (const auto& w : ref_words) joined += w;
                             return joined;
                         }());

    for (const DiscreteEvent& d : hyp.discrete)
        out.discrete.push_back({map_gap(result.ops, d.gap), d.tag});
    std::stable_sort(out.discrete.begin(), out.discrete.end(),
                     [](const DiscreteEvent& a, const DiscreteEvent& b) {
                         return std::tie(a.gap, a.tag) < std::tie(b.gap, b.tag);
                     });

    for (const SpanEvent& s : hyp.spans) {
        if (auto hull = map_span_hull(result.ops, s.start, s.end)) {
            out.spans.push_back({hull->first, hull->second, s.tag});
        } else {
            // span annihilated by deletion: re-expand onto the nearest
            // surviving word at the collapse point
            if (ref_n == 0) continue;
            int w = std::min(map_gap(result.ops, s.start), ref_n - 1);
            out.spans.push_back({w, w, s.tag});
        }
    }
    repair_spans(out.spans, ref_n);

    if (out.words != ref_words || !out.valid())
        throw InvariantViolationError("event_preserving_align produced an "
                                      "invalid transcript");
    return result;
}

std::string debug_trace(const AnnotatedTranscript& hyp,
                        const AlignmentResult& result) {
    std::ostringstream os;
    for (const EditOp& op : result.ops) {
        os << edit_kind_name(op.kind) << " h=[" << op.h_begin << ","
           << op.h_end << ") r=[" << op.r_begin << "," << op.r_end
           << ") events=[";
        bool first = true;
        for (const DiscreteEvent& d : hyp.discrete) {
            bool inside = (op.kind == EditKind::Replace ||
                           op.kind == EditKind::Delete)
                              ? (d.gap > op.h_begin && d.gap < op.h_end)
                              : (d.gap >= op.h_begin && d.gap <= op.h_end &&
                                 op.kind == EditKind::Equal);
            if (!inside) continue;
            if (!first) os << " ";
            os << "[" << taxonomy::by_id(d.tag).name << "]@gap" << d.gap;
            first = false;
        }
        for (const SpanEvent& s : hyp.spans) {
            if (s.start > op.h_end - 1 || s.end < op.h_begin) continue;
            if (op.kind == EditKind::Insert) continue;
            if (!first) os << " ";
            os << "<" << taxonomy::by_id(s.tag).name << ">@" << s.start << ".."
               << s.end;
            first = false;
        }
        os << "]\n";
    }
    return os.str();
}

}  // namespace wesr
