#ifndef WESR_PERTURB_HPP
#define WESR_PERTURB_HPP

#include <cstdint>
#include <vector>

#include "wesr/transcript.hpp"

namespace wesr {

// Seeded synthetic-hypothesis generation. The random source is mt19937_64
// with explicit seeding, so outputs replay bit-identically everywhere.
struct PerturbSpec {
    double substitution_rate = 0.0;
    double insertion_rate = 0.0;
    double deletion_rate = 0.0;
    double tag_drop = 0.0;
    std::vector<int> gap_offsets{0};   // discrete-shift candidates, uniform
    std::vector<int> span_deltas{0};   // endpoint-jitter candidates, uniform
    std::uint64_t seed = 0;
};

// Stable 64-bit mix of the base seed with an utterance id, for parallel
// per-utterance generation.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view utterance_id);

// Mutates words at the given rates; events are kept and re-anchored so the
// output stays valid. A span whose words are all deleted is dropped.
AnnotatedTranscript perturb_words(const AnnotatedTranscript& t,
                                  const PerturbSpec& spec);

// Drops/moves events; words untouched. Jittered endpoints that would break
// span invariants fall back to their original positions.
AnnotatedTranscript perturb_tags(const AnnotatedTranscript& t,
                                 const PerturbSpec& spec);

}  // namespace wesr

#endif  // WESR_PERTURB_HPP
