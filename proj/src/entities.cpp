#include <algorithm>
#include <set>

#include "xsimkit/augment.hpp"
#include "xsimkit/text.hpp"

namespace xsimkit {

namespace {

struct GazetteerEntry {
    std::string_view surface;
    SpanLabel label;
};

bool covered(std::size_t begin, std::size_t end, const std::vector<SpanAnnotation>& spans) {
    for (const SpanAnnotation& s : spans) {
        if (begin < s.end && s.begin < end) return true;
    }
    return false;
}

}  // namespace

std::vector<SpanAnnotation> detect_entities(std::string_view sentence, const Lexicons& lexicons,
                                            std::size_t sentence_index) {
    std::vector<SpanAnnotation> spans;

    // (a) gazetteer, longest match first, scanning left to right
    std::vector<GazetteerEntry> gazetteer;
    for (const auto& [label, surfaces] : lexicons.entity_pool) {
        for (const std::string& surface : surfaces) gazetteer.push_back({surface, label});
    }
    std::stable_sort(gazetteer.begin(), gazetteer.end(),
                     [](const GazetteerEntry& a, const GazetteerEntry& b) {
                         return a.surface.size() > b.surface.size();
                     });
    std::size_t pos = 0;
    while (pos < sentence.size()) {
        bool matched = false;
        for (const GazetteerEntry& entry : gazetteer) {
            const std::size_t len = entry.surface.size();
            if (len == 0 || pos + len > sentence.size()) continue;
            if (sentence.substr(pos, len) != entry.surface) continue;
            if (!on_word_boundary(sentence, pos, pos + len)) continue;
            spans.push_back({sentence_index, pos, pos + len, entry.label});
            pos += len;
            matched = true;
            break;
        }
        if (!matched) ++pos;
    }

    // (b) capitalized multi-token sequences not at sentence start -> OTHER
    const std::vector<Token> tokens = tokenize(sentence);
    std::size_t i = 0;
    while (i < tokens.size()) {
        if (!is_ascii_upper(sentence[tokens[i].begin]) ||
            covered(tokens[i].begin, tokens[i].end, spans)) {
            ++i;
            continue;
        }
        std::size_t run_end = i + 1;
        while (run_end < tokens.size() && is_ascii_upper(sentence[tokens[run_end].begin]) &&
               !covered(tokens[run_end].begin, tokens[run_end].end, spans)) {
            // tokens must be separated by spaces only to count as one sequence
            bool spaced = true;
            for (std::size_t b = tokens[run_end - 1].end; b < tokens[run_end].begin; ++b) {
                if (sentence[b] != ' ') spaced = false;
            }
            if (!spaced) break;
            ++run_end;
        }
        if (run_end - i >= 2 && i != 0) {
            spans.push_back({sentence_index, tokens[i].begin, tokens[run_end - 1].end, SpanLabel::Other});
        }
        i = run_end;
    }

    std::sort(spans.begin(), spans.end(),
              [](const SpanAnnotation& a, const SpanAnnotation& b) { return a.begin < b.begin; });
    return spans;
}

namespace detail {

std::vector<std::string> transform_entities_seeded(std::string_view sentence,
                                                   std::span<const SpanAnnotation> spans,
                                                   const Lexicons& lexicons, std::size_t cap,
                                                   Rng& rng) {
    std::vector<std::string> outputs;
    if (spans.empty() || cap == 0) return outputs;

    std::vector<SpanAnnotation> ordered(spans.begin(), spans.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const SpanAnnotation& a, const SpanAnnotation& b) { return a.begin < b.begin; });
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        if (ordered[i].begin >= ordered[i].end || ordered[i].end > sentence.size() ||
            (i > 0 && ordered[i].begin < ordered[i - 1].end))
            throw InvariantViolation("entity spans must be in-bounds and non-overlapping");
    }

    // per-span alternatives: pool of the span's class minus the original surface
    std::vector<std::vector<std::string_view>> alternatives(ordered.size());
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        const std::vector<std::string>* pool = lexicons.pool_for(ordered[i].label);
        if (!pool) continue;
        std::string_view surface = sentence.substr(ordered[i].begin, ordered[i].end - ordered[i].begin);
        for (const std::string& candidate : *pool) {
            if (candidate != surface) alternatives[i].push_back(candidate);
        }
    }

    // choice digit per span: 0 = keep, j = alternatives[j-1]
    constexpr std::uint64_t kSaturated = std::uint64_t(1) << 62;
    std::uint64_t total = 1;
    for (const auto& alts : alternatives) {
        const std::uint64_t radix = alts.size() + 1;
        total = (total > kSaturated / radix) ? kSaturated : total * radix;
    }
    const std::uint64_t distinct = total - 1;  // minus the all-keep combination
    if (distinct == 0) return outputs;

    auto render = [&](const std::vector<std::uint64_t>& digits) {
        std::string out;
        std::size_t cursor = 0;
        for (std::size_t i = 0; i < ordered.size(); ++i) {
            out.append(sentence.substr(cursor, ordered[i].begin - cursor));
            if (digits[i] == 0)
                out.append(sentence.substr(ordered[i].begin, ordered[i].end - ordered[i].begin));
            else
                out.append(alternatives[i][digits[i] - 1]);
            cursor = ordered[i].end;
        }
        out.append(sentence.substr(cursor));
        return out;
    };

    auto push = [&](const std::vector<std::uint64_t>& digits) {
        std::string out = render(digits);
        if (out == sentence) return;
        if (std::find(outputs.begin(), outputs.end(), out) == outputs.end())
            outputs.push_back(std::move(out));
    };

    std::vector<std::uint64_t> digits(ordered.size(), 0);
    if (distinct <= 4 * cap && total < kSaturated) {
        // small combination space: enumerate everything (odometer with the
        // last span counting fastest), then shuffle when over cap
        std::vector<std::vector<std::uint64_t>> combos;
        while (true) {
            std::size_t d = ordered.size();
            while (d > 0) {
                --d;
                if (++digits[d] <= alternatives[d].size()) break;
                digits[d] = 0;
                if (d == 0) {
                    d = ordered.size();  // odometer wrapped: done
                    break;
                }
            }
            if (d == ordered.size()) break;
            bool all_keep = true;
            for (std::uint64_t v : digits)
                if (v != 0) all_keep = false;
            if (!all_keep) combos.push_back(digits);
        }
        if (combos.size() > cap) {
            for (std::size_t i = combos.size(); i > 1; --i)
                std::swap(combos[i - 1], combos[rng.below(i)]);
        }
        for (const auto& combo : combos) {
            if (outputs.size() >= cap) break;
            push(combo);
        }
        return outputs;
    }

    // large space: rejection-sample distinct combinations
    std::set<std::vector<std::uint64_t>> seen;
    std::uint64_t attempts = 0;
    const std::uint64_t budget = 64 * static_cast<std::uint64_t>(cap) + 256;
    while (outputs.size() < cap && seen.size() < distinct && attempts < budget) {
        ++attempts;
        bool all_keep = true;
        for (std::size_t i = 0; i < ordered.size(); ++i) {
            digits[i] = alternatives[i].empty() ? 0 : rng.below(alternatives[i].size() + 1);
            if (digits[i] != 0) all_keep = false;
        }
        if (all_keep || !seen.insert(digits).second) continue;
        push(digits);
    }
    return outputs;
}

}  // namespace detail

std::vector<std::string> transform_entities(std::string_view sentence,
                                            std::span<const SpanAnnotation> spans,
                                            const Lexicons& lexicons, const AugmentConfig& config) {
    Rng rng = rng_for(config, spans.empty() ? 0 : spans.front().sentence_index,
                      TransformCategory::Entity);
    return detail::transform_entities_seeded(sentence, spans, lexicons, config.cap_per_category, rng);
}

}  // namespace xsimkit
