#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xsimkit/corpus.hpp"
#include "xsimkit/lexicons.hpp"
#include "xsimkit/rng.hpp"

namespace xsimkit {

struct AugmentConfig {
    std::uint64_t seed = 0;
    std::size_t cap_per_category = kDefaultCap;
    std::set<TransformCategory> categories = {TransformCategory::Causality,
                                              TransformCategory::Entity,
                                              TransformCategory::Number};
};

void validate(const AugmentConfig& config);

struct SpanAnnotation {
    std::size_t sentence_index = 0;
    std::size_t begin = 0;  // byte offsets
    std::size_t end = 0;
    SpanLabel label = SpanLabel::Other;

    bool operator==(const SpanAnnotation&) const = default;
};

// Causality alternation: one antonym substitution, one negation
// insertion/removal, or one strengthener substitution per output.
std::vector<std::string> transform_causality(std::string_view sentence, const Lexicons& lexicons,
                                             const AugmentConfig& config);

// Gazetteer matches (longest-first) plus capitalized multi-token sequences
// away from sentence start (labeled OTHER). Spans are non-overlapping.
std::vector<SpanAnnotation> detect_entities(std::string_view sentence, const Lexicons& lexicons,
                                            std::size_t sentence_index = 0);

// Replaces one or more spans with pool entities of the span's class, sampled
// without replacement over distinct combinations until cap or exhaustion.
std::vector<std::string> transform_entities(std::string_view sentence,
                                            std::span<const SpanAnnotation> spans,
                                            const Lexicons& lexicons, const AugmentConfig& config);

// Pattern spans for digit strings, percents, spelled and digit ordinals,
// clock times and numeric dates; longest-match-first, non-overlapping.
std::vector<SpanAnnotation> detect_numbers(std::string_view sentence,
                                           std::size_t sentence_index = 0);

// Perturbs one or more numeric spans with class- and format-preserving
// seeded replacements that always differ from the original value.
std::vector<std::string> transform_numbers(std::string_view sentence,
                                           std::span<const SpanAnnotation> spans,
                                           const AugmentConfig& config);

// Seeded per (seed, origin, category) so parallel generation order cannot
// change outputs.
Rng rng_for(const AugmentConfig& config, std::size_t origin, TransformCategory category);

// Full construction: originals first, then transforms grouped by origin then
// category then generation order, globally deduped by exact string.
// extra_spans inject externally supplied detections merged ahead of the
// rule-based ones.
CandidateSet build_candidate_set(const EvalSet& eval, const Lexicons& lexicons,
                                 const AugmentConfig& config,
                                 std::span<const SpanAnnotation> extra_spans = {});

// Annotations file: sentence_index<TAB>start<TAB>end<TAB>label.
std::vector<SpanAnnotation> load_annotations(const std::filesystem::path& path);

namespace detail {
// Exposed for the entity/number transforms; picks replacements for the
// sampled spans. Overloads used by transform_* with an explicit stream.
std::vector<std::string> transform_entities_seeded(std::string_view sentence,
                                                   std::span<const SpanAnnotation> spans,
                                                   const Lexicons& lexicons, std::size_t cap,
                                                   Rng& rng);
std::vector<std::string> transform_numbers_seeded(std::string_view sentence,
                                                  std::span<const SpanAnnotation> spans,
                                                  std::size_t cap, Rng& rng);
}  // namespace detail

}  // namespace xsimkit
