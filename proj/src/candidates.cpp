#include <algorithm>
#include <fstream>
#include <unordered_set>

#include <omp.h>

#include "xsimkit/augment.hpp"
#include "xsimkit/text.hpp"

namespace xsimkit {

void validate(const AugmentConfig& config) {
    if (config.cap_per_category < 1) throw ConfigError("cap_per_category must be >= 1");
    if (config.categories.empty()) throw ConfigError("no transform categories enabled");
}

Rng rng_for(const AugmentConfig& config, std::size_t origin, TransformCategory category) {
    return Rng(mix_seed(config.seed, origin, static_cast<std::uint64_t>(category) + 1));
}

std::vector<SpanAnnotation> load_annotations(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::vector<SpanAnnotation> spans;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line.front() == '#') continue;
        auto fields = split(line, '\t');
        if (fields.size() != 4)
            throw FormatError(path.string() + ":" + std::to_string(lineno) +
                              ": expected sentence_index<TAB>start<TAB>end<TAB>label");
        SpanAnnotation span;
        try {
            span.sentence_index = std::stoull(fields[0]);
            span.begin = std::stoull(fields[1]);
            span.end = std::stoull(fields[2]);
        } catch (const std::exception&) {
            throw FormatError(path.string() + ":" + std::to_string(lineno) + ": bad offsets");
        }
        auto label = span_label_from_token(fields[3]);
        if (!label)
            throw FormatError(path.string() + ":" + std::to_string(lineno) + ": unknown label '" +
                              fields[3] + "'");
        span.label = *label;
        if (span.begin >= span.end)
            throw FormatError(path.string() + ":" + std::to_string(lineno) + ": start must be < end");
        spans.push_back(span);
    }
    return spans;
}

namespace {

// External spans win; detected spans that overlap a kept one are dropped.
std::vector<SpanAnnotation> resolve_spans(std::vector<SpanAnnotation> external,
                                          std::vector<SpanAnnotation> detected) {
    std::vector<SpanAnnotation> kept;
    auto by_begin = [](const SpanAnnotation& a, const SpanAnnotation& b) {
        return a.begin != b.begin ? a.begin < b.begin : a.end > b.end;
    };
    std::sort(external.begin(), external.end(), by_begin);
    auto overlaps_kept = [&](const SpanAnnotation& s) {
        for (const SpanAnnotation& k : kept)
            if (s.begin < k.end && k.begin < s.end) return true;
        return false;
    };
    for (const SpanAnnotation& s : external)
        if (!overlaps_kept(s)) kept.push_back(s);
    for (const SpanAnnotation& s : detected)
        if (!overlaps_kept(s)) kept.push_back(s);
    std::sort(kept.begin(), kept.end(), by_begin);
    return kept;
}

std::vector<SpanAnnotation> filter_label(const std::vector<SpanAnnotation>& spans,
                                         bool (*pred)(SpanLabel)) {
    std::vector<SpanAnnotation> out;
    for (const SpanAnnotation& s : spans)
        if (pred(s.label)) out.push_back(s);
    return out;
}

struct SentenceOutputs {
    std::vector<std::string> causality;
    std::vector<std::string> entity;
    std::vector<std::string> number;
};

}  // namespace

CandidateSet build_candidate_set(const EvalSet& eval, const Lexicons& lexicons,
                                 const AugmentConfig& config,
                                 std::span<const SpanAnnotation> extra_spans) {
    validate(config);
    const std::size_t n = eval.references.size();

    std::vector<std::vector<SpanAnnotation>> external(n);
    for (const SpanAnnotation& s : extra_spans) {
        if (s.sentence_index >= n)
            throw InvariantViolation("annotation sentence_index " + std::to_string(s.sentence_index) +
                                     " out of range");
        if (s.end > eval.references[s.sentence_index].size())
            throw InvariantViolation("annotation span exceeds sentence " +
                                     std::to_string(s.sentence_index));
        external[s.sentence_index].push_back(s);
    }

    const bool want_causality = config.categories.contains(TransformCategory::Causality);
    const bool want_entity = config.categories.contains(TransformCategory::Entity);
    const bool want_number = config.categories.contains(TransformCategory::Number);

    // each sentence is independent; per-(sentence, category) seeding keeps the
    // result identical for any thread count
    std::vector<SentenceOutputs> generated(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (long long idx = 0; idx < static_cast<long long>(n); ++idx) {
        const std::size_t i = static_cast<std::size_t>(idx);
        const std::string& ref = eval.references[i];
        SentenceOutputs& out = generated[i];
        if (want_causality) out.causality = transform_causality(ref, lexicons, config);
        if (want_entity) {
            auto spans = resolve_spans(filter_label(external[i], is_entity_label),
                                       detect_entities(ref, lexicons, i));
            Rng rng = rng_for(config, i, TransformCategory::Entity);
            out.entity =
                detail::transform_entities_seeded(ref, spans, lexicons, config.cap_per_category, rng);
        }
        if (want_number) {
            auto spans = resolve_spans(filter_label(external[i], is_numeric_label),
                                       detect_numbers(ref, i));
            Rng rng = rng_for(config, i, TransformCategory::Number);
            out.number = detail::transform_numbers_seeded(ref, spans, config.cap_per_category, rng);
        }
    }

    CandidateSet set;
    set.num_originals = n;
    set.candidates.reserve(n * 2);
    std::unordered_set<std::string> seen;
    auto add = [&](Candidate c) {
        if (seen.contains(c.text)) return;
        seen.insert(c.text);
        set.candidates.push_back(std::move(c));
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (seen.contains(eval.references[i]))
            throw InvariantViolation("reference " + std::to_string(i) +
                                     " duplicates an earlier reference sentence");
        add({eval.references[i], i, std::nullopt});
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::string& text : generated[i].causality)
            add({std::move(text), i, TransformCategory::Causality});
        for (std::string& text : generated[i].entity)
            add({std::move(text), i, TransformCategory::Entity});
        for (std::string& text : generated[i].number)
            add({std::move(text), i, TransformCategory::Number});
    }
    return set;
}

}  // namespace xsimkit
