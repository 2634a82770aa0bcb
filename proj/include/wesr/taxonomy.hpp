#ifndef WESR_TAXONOMY_HPP
#define WESR_TAXONOMY_HPP

#include <array>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "wesr/errors.hpp"

namespace wesr {

enum class EventKind { Discrete, Continuous };

enum class Category { LAUGH, SHOUT, WHISPERING, SINGING, BREATHING, COUGH, CRYING };

constexpr std::array<Category, 7> kAllCategories = {
    Category::LAUGH,     Category::SHOUT,     Category::WHISPERING,
    Category::SINGING,   Category::BREATHING, Category::COUGH,
    Category::CRYING};

std::string_view category_name(Category c);

// One of the 21 canonical vocal-event labels. `id` is a dense index into
// the registry, usable as a compact set key.
struct EventTag {
    int id;
    std::string_view name;
    EventKind kind;
    Category category;
};

constexpr int kTagCount = 21;

namespace taxonomy {

// All 21 tags, discrete first, in registry order.
std::span<const EventTag> all_tags();

// Lowercase, trim whitespace and surrounding []/<>/</>, spaces to
// underscores. Unknown names pass through; lookup decides validity.
std::string canonicalize(std::string_view raw);

// Canonical-name lookup over the full registry (aliases resolved).
// Throws UnknownTagError when the name is not among the 21.
const EventTag& lookup(std::string_view name);

// Nullptr instead of throwing.
const EventTag* find(std::string_view name);

// Kind-aware lookup used by the parser: "[crying]" must resolve to the
// discrete tag `cry` while "<crying>" is the continuous tag.
const EventTag* find_discrete(std::string_view name);
const EventTag* find_continuous(std::string_view name);

const EventTag& by_id(int id);

Category aggregate_category(const EventTag& tag);

// "[name]" or "<name>" per kind.
std::string render(const EventTag& tag);

}  // namespace taxonomy

enum class Dataset {
    NonverbalTTS,
    NVSpeech170k,
    NonVerbalSpeech38K,
    SMIIPNV,
    Synparaspeech,
    MNV17,
};

// Throws UnknownDatasetError on unrecognized ids.
Dataset dataset_from_string(std::string_view s);
std::string_view dataset_name(Dataset d);

// Normalization tables from prior datasets' tag inventories into WESR tags.
// An entry mapping to nullopt means "outside the taxonomy" (callers drop
// the utterance). Raw tags not in a dataset's inventory raise
// UnknownExternalTagError.
class ExternalMapping {
  public:
    // Built-in default tables covering the six known datasets.
    static ExternalMapping defaults();

    // Key-value override document: lines of "dataset/raw_tag = name" where
    // name is a canonical tag or the literal EXCLUDE. '#' starts a comment.
    void apply_overrides(std::istream& in);

    std::optional<EventTag> map(Dataset dataset, std::string_view raw) const;

  private:
    void set(Dataset dataset, std::string_view raw, std::optional<int> tag_id);
    std::map<std::pair<Dataset, std::string>, std::optional<int>> entries_;
};

}  // namespace wesr

#endif  // WESR_TAXONOMY_HPP
