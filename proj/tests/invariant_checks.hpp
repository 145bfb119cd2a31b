#pragma once

// Augmentation invariant checkers shared by the fixture tests and the
// acceptance suite: negativity, locality, cap compliance, class/format
// preservation. Everything here is test-side and independent of the
// generation code paths it checks.

#include <algorithm>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "xsimkit/augment.hpp"
#include "xsimkit/corpus.hpp"

namespace invariant {

inline std::size_t levenshtein(std::string_view a, std::string_view b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] != b[j - 1]);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

// The text outside the detected spans must appear unchanged and in order.
inline bool segments_preserved(std::string_view origin, std::string_view transformed,
                               const std::vector<xsimkit::SpanAnnotation>& spans) {
    // positional segments, kept even when empty so "before the first span"
    // and "after the last span" stay identifiable
    std::vector<std::string_view> segments;
    std::size_t cursor = 0;
    for (const auto& span : spans) {
        segments.push_back(origin.substr(cursor, span.begin - cursor));
        cursor = std::max(cursor, span.end);
    }
    segments.push_back(origin.substr(cursor));

    std::size_t pos = 0;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        const std::string_view seg = segments[s];
        if (s == 0 && !seg.empty()) {
            if (transformed.substr(0, seg.size()) != seg) return false;
            pos = seg.size();
        } else if (s + 1 == segments.size() && !seg.empty()) {
            if (transformed.size() < pos + seg.size()) return false;
            if (transformed.substr(transformed.size() - seg.size()) != seg) return false;
        } else if (!seg.empty()) {
            const std::size_t found = transformed.find(seg, pos);
            if (found == std::string_view::npos) return false;
            pos = found + seg.size();
        }
    }
    return true;
}

// Edit distance bounded by the replaced spans plus replacement lengths. With
// replacements only measurable via the length delta, the implied bound is
// 2 * total span length + |len delta|.
inline bool locality_bound_holds(std::string_view origin, std::string_view transformed,
                                 const std::vector<xsimkit::SpanAnnotation>& spans) {
    std::size_t span_total = 0;
    for (const auto& span : spans) span_total += span.end - span.begin;
    const std::size_t delta = origin.size() > transformed.size()
                                  ? origin.size() - transformed.size()
                                  : transformed.size() - origin.size();
    return levenshtein(origin, transformed) <= 2 * span_total + delta;
}

// Causality outputs replace exactly one token/phrase: outside a bounded
// middle region, prefix and suffix are untouched.
inline bool single_edit_holds(std::string_view origin, std::string_view transformed,
                              std::size_t max_edit = 32) {
    std::size_t prefix = 0;
    while (prefix < origin.size() && prefix < transformed.size() &&
           origin[prefix] == transformed[prefix])
        ++prefix;
    std::size_t suffix = 0;
    while (suffix < origin.size() - prefix && suffix < transformed.size() - prefix &&
           origin[origin.size() - 1 - suffix] == transformed[transformed.size() - 1 - suffix])
        ++suffix;
    const std::size_t mid_origin = origin.size() - prefix - suffix;
    const std::size_t mid_out = transformed.size() - prefix - suffix;
    return mid_origin <= max_edit && mid_out <= max_edit && (mid_origin > 0 || mid_out > 0);
}

struct CheckResult {
    std::size_t violations = 0;
    std::string first_message;

    void fail(const std::string& message) {
        if (violations == 0) first_message = message;
        ++violations;
    }
};

// Runs every augmentation invariant over a built set.
inline CheckResult check_set(const xsimkit::EvalSet& eval, const xsimkit::Lexicons& lexicons,
                             const xsimkit::CandidateSet& set, std::size_t cap) {
    CheckResult result;
    try {
        xsimkit::validate(set, cap);  // prefix, dedup, origins, cap, negativity
    } catch (const std::exception& e) {
        result.fail(e.what());
    }
    if (set.num_originals != eval.references.size())
        result.fail("originals count does not match the corpus");
    for (std::size_t i = 0; i < set.num_originals && i < eval.references.size(); ++i) {
        if (set.candidates[i].text != eval.references[i])
            result.fail("original " + std::to_string(i) + " does not equal reference " +
                        std::to_string(i));
    }
    for (std::size_t i = set.num_originals; i < set.size(); ++i) {
        const xsimkit::Candidate& c = set.candidates[i];
        const std::string& origin = eval.references[c.origin];
        if (c.text == origin) result.fail("transform equals origin " + std::to_string(c.origin));
        if (c.transform == xsimkit::TransformCategory::Causality) {
            if (!single_edit_holds(origin, c.text))
                result.fail("causality edit not local for origin " + std::to_string(c.origin));
            continue;
        }
        std::vector<xsimkit::SpanAnnotation> spans =
            c.transform == xsimkit::TransformCategory::Entity
                ? xsimkit::detect_entities(origin, lexicons, c.origin)
                : xsimkit::detect_numbers(origin, c.origin);
        if (!segments_preserved(origin, c.text, spans))
            result.fail("non-span text changed for origin " + std::to_string(c.origin));
        if (!locality_bound_holds(origin, c.text, spans))
            result.fail("locality bound violated for origin " + std::to_string(c.origin));
    }
    return result;
}

}  // namespace invariant
