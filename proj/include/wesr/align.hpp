#ifndef WESR_ALIGN_HPP
#define WESR_ALIGN_HPP

#include <string>
#include <vector>

#include "wesr/transcript.hpp"

namespace wesr {

enum class EditKind { Equal, Insert, Delete, Replace };

std::string_view edit_kind_name(EditKind k);

// Half-open word-index ranges into hypothesis (a) and reference (b).
// Ops are sorted, contiguous, and jointly cover both sequences.
struct EditOp {
    EditKind kind;
    int h_begin, h_end;
    int r_begin, r_end;

    friend bool operator==(const EditOp&, const EditOp&) = default;
};

// Longest-contiguous-matching-block recursive diff, no junk heuristic.
// Ties break toward the earliest block in a, then in b. Deterministic.
std::vector<EditOp> diff_opcodes(const std::vector<std::string>& a,
                                 const std::vector<std::string>& b);

struct EditCounts {
    int substitutions = 0;
    int insertions = 0;
    int deletions = 0;
};

struct AlignmentResult {
    AnnotatedTranscript aligned;  // words == reference exactly
    std::vector<EditOp> ops;
    EditCounts counts;
};

// Proportional gap relocation with half-up rounding; pins down "most
// similar position" for events re-inserted into a replaced segment.
int relocate_gap(int rel_gap, int old_len, int new_len);

// Rewrites the hypothesis word sequence into the reference while
// conserving the hypothesis event tags. Throws InvariantViolationError if
// the result fails its postconditions (internal bug guard).
AlignmentResult event_preserving_align(const AnnotatedTranscript& hyp,
                                       const std::vector<std::string>& ref_words);

// One line per EditOp with the events it touched; stable field order.
std::string debug_trace(const AnnotatedTranscript& hyp,
                        const AlignmentResult& result);

}  // namespace wesr

#endif  // WESR_ALIGN_HPP
