#include "wesr/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace wesr {

std::string_view category_name(Category c) {
    switch (c) {
        case Category::LAUGH: return "LAUGH";
        case Category::SHOUT: return "SHOUT";
        case Category::WHISPERING: return "WHISPERING";
        case Category::SINGING: return "SINGING";
        case Category::BREATHING: return "BREATHING";
        case Category::COUGH: return "COUGH";
        case Category::CRYING: return "CRYING";
    }
    return "?";
}

namespace taxonomy {

namespace {

constexpr std::array<EventTag, kTagCount> kRegistry = {{
    // discrete
    {0, "breathing", EventKind::Discrete, Category::BREATHING},
    {1, "chuckle", EventKind::Discrete, Category::LAUGH},
    {2, "clear_throat", EventKind::Discrete, Category::COUGH},
    {3, "cough", EventKind::Discrete, Category::COUGH},
    {4, "crowd_laughter", EventKind::Discrete, Category::LAUGH},
    {5, "cry", EventKind::Discrete, Category::CRYING},
    {6, "exhale", EventKind::Discrete, Category::BREATHING},
    {7, "giggle", EventKind::Discrete, Category::LAUGH},
    {8, "inhale", EventKind::Discrete, Category::BREATHING},
    {9, "laughs", EventKind::Discrete, Category::LAUGH},
    {10, "roar", EventKind::Discrete, Category::SHOUT},
    {11, "scream", EventKind::Discrete, Category::SHOUT},
    {12, "shout", EventKind::Discrete, Category::SHOUT},
    {13, "sigh", EventKind::Discrete, Category::BREATHING},
    {14, "sobbing", EventKind::Discrete, Category::CRYING},
    // continuous
    {15, "crying", EventKind::Continuous, Category::CRYING},
    {16, "laughing", EventKind::Continuous, Category::LAUGH},
    {17, "panting", EventKind::Continuous, Category::BREATHING},
    {18, "shouting", EventKind::Continuous, Category::SHOUT},
    {19, "singing", EventKind::Continuous, Category::SINGING},
    {20, "whispering", EventKind::Continuous, Category::WHISPERING},
}};

const EventTag* find_with_kind(std::string_view canonical, EventKind kind) {
    for (const auto& t : kRegistry)
        if (t.kind == kind && t.name == canonical) return &t;
    // Kind-specific aliases: a bracketed "[crying]" is the discrete cry.
    if (kind == EventKind::Discrete && canonical == "crying")
        return &kRegistry[5];
    return nullptr;
}

}  // namespace

std::span<const EventTag> all_tags() { return kRegistry; }

std::string canonicalize(std::string_view raw) {
    size_t b = 0, e = raw.size();
    auto is_trim = [](char c) {
        return c == ' ' || c == '\t' || c == '[' || c == ']' || c == '<' ||
               c == '>' || c == '/';
    };
    while (b < e && is_trim(raw[b])) ++b;
    while (e > b && is_trim(raw[e - 1])) --e;
    std::string out;
    out.reserve(e - b);
    for (size_t i = b; i < e; ++i) {
        char c = raw[i];
        if (c == ' ' || c == '\t')
            out.push_back('_');
        else
            out.push_back(static_cast<char>(
                std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

const EventTag* find(std::string_view name) {
    std::string canonical = canonicalize(name);
    for (const auto& t : kRegistry)
        if (t.name == canonical) return &t;
    return nullptr;
}

const EventTag& lookup(std::string_view name) {
    if (const EventTag* t = find(name)) return *t;
    throw UnknownTagError("unknown tag: " + std::string(name));
}

const EventTag* find_discrete(std::string_view name) {
    return find_with_kind(canonicalize(name), EventKind::Discrete);
}

const EventTag* find_continuous(std::string_view name) {
    return find_with_kind(canonicalize(name), EventKind::Continuous);
}

const EventTag& by_id(int id) { return kRegistry.at(static_cast<size_t>(id)); }

Category aggregate_category(const EventTag& tag) { return tag.category; }

std::string render(const EventTag& tag) {
    std::string out;
    if (tag.kind == EventKind::Discrete) {
        out = "[";
        out += tag.name;
        out += "]";
    } else {
        out = "<";
        out += tag.name;
        out += ">";
    }
    return out;
}

}  // namespace taxonomy

Dataset dataset_from_string(std::string_view s) {
    std::string k = taxonomy::canonicalize(s);
    std::erase_if(k, [](char c) { return c == '_' || c == '-'; });
    if (k == "nonverbaltts") return Dataset::NonverbalTTS;
    if (k == "nvspeech170k") return Dataset::NVSpeech170k;
    if (k == "nonverbalspeech38k") return Dataset::NonVerbalSpeech38K;
    if (k == "smiipnv") return Dataset::SMIIPNV;
    if (k == "synparaspeech") return Dataset::Synparaspeech;
    if (k == "mnv17") return Dataset::MNV17;
    throw UnknownDatasetError("unknown dataset: " + std::string(s));
}

std::string_view dataset_name(Dataset d) {
    switch (d) {
        case Dataset::NonverbalTTS: return "nonverbaltts";
        case Dataset::NVSpeech170k: return "nvspeech170k";
        case Dataset::NonVerbalSpeech38K: return "nonverbalspeech38k";
        case Dataset::SMIIPNV: return "smiipnv";
        case Dataset::Synparaspeech: return "synparaspeech";
        case Dataset::MNV17: return "mnv17";
    }
    throw UnknownDatasetError("bad dataset enum");
}

namespace {

// Default normalization tables, in the same key-value format the override
// loader accepts. Mappings for NVSpeech-170k and MNV-17 are best-effort
// (the source datasets publish inventories but no cross-dataset mapping);
// see data/default_mappings.kv for the user-editable copy.
constexpr const char* kDefaultMappingDoc = R"(
# NonverbalTTS
nonverbaltts/breath = breathing
nonverbaltts/grunt = EXCLUDE
nonverbaltts/sniff = EXCLUDE
nonverbaltts/throat_clearing = clear_throat
nonverbaltts/groan = EXCLUDE
nonverbaltts/sigh = sigh
nonverbaltts/snore = EXCLUDE
nonverbaltts/cough = cough
nonverbaltts/laugh = laughs
nonverbaltts/sneeze = EXCLUDE

# NVSpeech-170k
nvspeech170k/breathing = breathing
nvspeech170k/laughter = laughs
nvspeech170k/confirmation-en = EXCLUDE
nvspeech170k/uhm = EXCLUDE
nvspeech170k/sigh = sigh
nvspeech170k/surprise-ah = EXCLUDE
nvspeech170k/surprise-oh = EXCLUDE
nvspeech170k/dissatisfaction-hnn = EXCLUDE
nvspeech170k/surprise-wa = EXCLUDE
nvspeech170k/question-yi = EXCLUDE
nvspeech170k/question-ei = EXCLUDE
nvspeech170k/cough = cough
nvspeech170k/question-ah = EXCLUDE
nvspeech170k/question-oh = EXCLUDE
nvspeech170k/surprise-yo = EXCLUDE
nvspeech170k/question-en = EXCLUDE
nvspeech170k/shh = EXCLUDE
nvspeech170k/crying = cry

# NonVerbalSpeech-38K
nonverbalspeech38k/snore = EXCLUDE
nonverbalspeech38k/throatclearing = clear_throat
nonverbalspeech38k/crying = cry
nonverbalspeech38k/breath = breathing
nonverbalspeech38k/sniff = EXCLUDE
nonverbalspeech38k/laughing = laughs
nonverbalspeech38k/coughing = cough
nonverbalspeech38k/gasp = EXCLUDE
nonverbalspeech38k/yawn = EXCLUDE
nonverbalspeech38k/sigh = sigh

# SMIIP-NV
smiipnv/laughter = laughs
smiipnv/crying = cry
smiipnv/cough = cough

# Synparaspeech
synparaspeech/sigh = sigh
synparaspeech/throat_clearing = clear_throat
synparaspeech/laugh = laughs
synparaspeech/pause = EXCLUDE
synparaspeech/tsk = EXCLUDE
synparaspeech/gasp = EXCLUDE

# MNV-17
mnv17/sneezing = EXCLUDE
mnv17/clapping = EXCLUDE
mnv17/hissing = EXCLUDE
mnv17/whistling = EXCLUDE
mnv17/clearing_throat = clear_throat
mnv17/coughing = cough
mnv17/lip_smacking = EXCLUDE
mnv17/exhaling = exhale
mnv17/moaning = EXCLUDE
mnv17/panting = breathing
mnv17/sniffling = EXCLUDE
mnv17/humming = EXCLUDE
mnv17/laughing = laughs
mnv17/applauding = EXCLUDE
mnv17/inhaling = inhale
mnv17/chuckling = chuckle
mnv17/sighing = sigh
)";

}  // namespace

ExternalMapping ExternalMapping::defaults() {
    ExternalMapping m;
    std::istringstream doc(kDefaultMappingDoc);
    m.apply_overrides(doc);
    return m;
}

void ExternalMapping::apply_overrides(std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos)
            line.erase(pos);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw SchemaError("mapping line missing '='", lineno);
            continue;
        }
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        auto slash = key.find('/');
        if (slash == std::string::npos)
            throw SchemaError("mapping key missing 'dataset/raw_tag'", lineno);
        Dataset ds = dataset_from_string(key.substr(0, slash));
        std::string raw = taxonomy::canonicalize(key.substr(slash + 1));
        std::string v = taxonomy::canonicalize(value);
        if (v == "exclude") {
            set(ds, raw, std::nullopt);
        } else {
            const EventTag& tag = taxonomy::lookup(v);
            set(ds, raw, tag.id);
        }
    }
}

void ExternalMapping::set(Dataset dataset, std::string_view raw,
                          std::optional<int> tag_id) {
    entries_[{dataset, std::string(raw)}] = tag_id;
}

std::optional<EventTag> ExternalMapping::map(Dataset dataset,
                                             std::string_view raw) const {
    std::string canonical = taxonomy::canonicalize(raw);
    auto it = entries_.find({dataset, canonical});
    if (it == entries_.end())
        throw UnknownExternalTagError(
            std::string(dataset_name(dataset)) + " has no tag '" + canonical +
            "' in its inventory");
    if (!it->second) return std::nullopt;
    return taxonomy::by_id(*it->second);
}

}  // namespace wesr
