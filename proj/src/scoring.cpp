#include "xsimkit/scoring.hpp"

#include <algorithm>

#include "xsimkit/text.hpp"

namespace xsimkit {

namespace {

ErrorReport build_report(const AlignmentResult& result, std::string direction,
                         std::vector<std::string> categories_included,
                         const std::vector<std::string>& counted_kinds) {
    ErrorReport report;
    report.direction = std::move(direction);
    report.total_sources = result.rows.size();
    report.counted_kinds = counted_kinds;
    report.categories_included = std::move(categories_included);
    for (const Alignment& row : result.rows) {
        if (row.kind == ErrorKind::Correct) continue;
        ++report.by_kind[std::string(to_token(row.kind))].count;
    }
    for (auto& [kind, kc] : report.by_kind)
        kc.percent = 100.0 * static_cast<double>(kc.count) /
                     static_cast<double>(report.total_sources);
    for (const std::string& kind : counted_kinds) {
        auto it = report.by_kind.find(kind);
        if (it != report.by_kind.end()) report.total_errors += it->second.count;
    }
    report.error_rate = report.total_sources == 0
                            ? 0.0
                            : 100.0 * static_cast<double>(report.total_errors) /
                                  static_cast<double>(report.total_sources);
    return report;
}

}  // namespace

ErrorReport error_rate(const AlignmentResult& result, std::string direction,
                       std::vector<std::string> categories_included) {
    return build_report(result, std::move(direction), std::move(categories_included),
                        {"causality", "entity", "number", "misaligned"});
}

ErrorReport subset_rescore(const EmbeddingMatrix& src, const CandidateSet& full_set,
                           const EmbeddingMatrix& cand_emb, const MarginConfig& cfg,
                           const std::set<TransformCategory>& subset, bool include_misaligned,
                           std::string direction) {
    if (subset.empty() && !include_misaligned)
        throw ConfigError("an empty subset requires include_misaligned (originals-only run)");

    std::vector<std::uint32_t> selected;
    selected.reserve(full_set.size());
    for (std::size_t i = 0; i < full_set.size(); ++i) {
        const Candidate& c = full_set.candidates[i];
        if (c.is_original() || subset.contains(*c.transform))
            selected.push_back(static_cast<std::uint32_t>(i));
    }
    if (selected.empty()) throw EmptyCandidateSet("no candidates left after filtering");

    AlignmentResult result = align_selected(src, full_set, cand_emb, selected, cfg);

    std::vector<std::string> counted;
    std::vector<std::string> included;
    for (TransformCategory c : subset) {
        counted.emplace_back(to_token(c));
        included.emplace_back(to_token(c));
    }
    if (include_misaligned) counted.emplace_back("misaligned");
    return build_report(result, std::move(direction), std::move(included), counted);
}

std::vector<AblationCombo> ablation_combos() {
    using enum TransformCategory;
    std::vector<AblationCombo> combos;
    combos.push_back({"full", {Causality, Entity, Number}, true});
    combos.push_back({"causality", {Causality}, false});
    combos.push_back({"entity", {Entity}, false});
    combos.push_back({"number", {Number}, false});
    combos.push_back({"misaligned", {}, true});
    combos.push_back({"causality+entity", {Causality, Entity}, false});
    combos.push_back({"causality+entity+misaligned", {Causality, Entity}, true});
    combos.push_back({"causality+misaligned", {Causality}, true});
    combos.push_back({"causality+number", {Causality, Number}, false});
    combos.push_back({"causality+number+misaligned", {Causality, Number}, true});
    combos.push_back({"entity+misaligned", {Entity}, true});
    combos.push_back({"number+entity", {Entity, Number}, false});
    combos.push_back({"number+entity+misaligned", {Entity, Number}, true});
    combos.push_back({"number+misaligned", {Number}, true});
    return combos;
}

AblationCombo parse_combo(std::string_view text) {
    AblationCombo combo;
    combo.name = std::string(text);
    for (const std::string& part : split(text, '+')) {
        std::string token = lower_ascii(trim(part));
        if (token == "misaligned") {
            combo.include_misaligned = true;
        } else if (auto cat = category_from_token(token)) {
            combo.subset.insert(*cat);
        } else {
            throw ConfigError("unknown ablation token '" + token + "'");
        }
    }
    if (combo.subset.empty() && !combo.include_misaligned)
        throw ConfigError("empty ablation combo '" + std::string(text) + "'");
    return combo;
}

}  // namespace xsimkit
