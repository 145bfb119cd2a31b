#pragma once

#include <map>
#include <set>
#include <string>

#include "xsimkit/align.hpp"

namespace xsimkit {

struct KindCount {
    std::size_t count = 0;
    double percent = 0.0;  // 100 * count / total_sources
};

// xsim / xsim++ error report. error_rate counts the kinds listed in
// counted_kinds; by_kind keeps the full attribution either way.
struct ErrorReport {
    std::string direction;
    std::size_t total_sources = 0;
    std::size_t total_errors = 0;  // errors of counted kinds
    double error_rate = 0.0;       // percent, in [0, 100]
    std::map<std::string, KindCount> by_kind;
    std::vector<std::string> counted_kinds;
    std::vector<std::string> categories_included;  // transform categories in the candidate pool
};

// Full error rate: every non-correct prediction counts.
ErrorReport error_rate(const AlignmentResult& result, std::string direction = "",
                       std::vector<std::string> categories_included = {});

// Filters the candidate pool to originals + transforms of the subset
// categories, re-aligns, and reports. Misaligned predictions are always
// attributed; they enter the error rate only when include_misaligned is set.
// An empty subset with include_misaligned reproduces classic xsim.
ErrorReport subset_rescore(const EmbeddingMatrix& src, const CandidateSet& full_set,
                           const EmbeddingMatrix& cand_emb, const MarginConfig& cfg,
                           const std::set<TransformCategory>& subset, bool include_misaligned,
                           std::string direction = "");

// The ablation combinations reported by `xsimkit ablate --subsets all`:
// the full set first, then the 13 named combinations of categories and
// misaligned attribution.
struct AblationCombo {
    std::string name;
    std::set<TransformCategory> subset;
    bool include_misaligned = false;
};

std::vector<AblationCombo> ablation_combos();
AblationCombo parse_combo(std::string_view text);

}  // namespace xsimkit
