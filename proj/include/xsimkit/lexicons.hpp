#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace xsimkit {

// Span labels: entity classes handled by the gazetteer detector plus numeric
// classes handled by the pattern detector.
enum class SpanLabel {
    Person,
    Org,
    Gpe,
    Other,
    Date,
    Ordinal,
    Cardinal,
    Time,
    Number,
    Percent,
};

std::string_view to_token(SpanLabel label);
std::optional<SpanLabel> span_label_from_token(std::string_view token);
bool is_entity_label(SpanLabel label);
bool is_numeric_label(SpanLabel label);

// Plain-text rule data for the causality and entity transforms. Vectors keep
// file order so generation is reproducible; maps only index into them.
struct Lexicons {
    // adjective (lowercase) -> antonyms, file order
    std::vector<std::pair<std::string, std::vector<std::string>>> antonyms;
    std::unordered_map<std::string, std::size_t> antonym_index;

    // (negated form, plain form), e.g. ("did not", "did"); applied in both
    // directions (removal and insertion)
    std::vector<std::pair<std::string, std::string>> negation_pairs;

    // weak modal/hedge (lowercase) -> assertive replacement, one-directional
    std::vector<std::pair<std::string, std::string>> strengtheners;
    std::unordered_map<std::string, std::size_t> strengthener_index;

    // entity class -> surface strings, file order, deduped
    std::vector<std::pair<SpanLabel, std::vector<std::string>>> entity_pool;

    const std::vector<std::string>* pool_for(SpanLabel label) const;
    bool empty() const {
        return antonyms.empty() && negation_pairs.empty() && strengtheners.empty() &&
               entity_pool.empty();
    }
};

// Throws InvariantViolation on self-mapping antonyms, two-directional
// strengtheners, or empty pool classes.
void validate(const Lexicons& lex);

// Loads antonyms.tsv, negations.tsv, strengtheners.tsv, entities.tsv from a
// directory. Missing files yield empty sections.
Lexicons load_lexicons(const std::filesystem::path& dir);

Lexicons parse_lexicons(std::string_view antonyms_tsv, std::string_view negations_tsv,
                        std::string_view strengtheners_tsv, std::string_view entities_tsv);

}  // namespace xsimkit
