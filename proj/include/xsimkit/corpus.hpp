#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xsimkit/errors.hpp"

namespace xsimkit {

inline constexpr std::size_t kDefaultCap = 100;
inline constexpr std::string_view kCandidateHeader = "#xsimpp-candidates v1";

enum class TransformCategory { Causality, Entity, Number };

inline constexpr TransformCategory kAllCategories[] = {
    TransformCategory::Causality, TransformCategory::Entity, TransformCategory::Number};

std::string_view to_token(TransformCategory c);
std::optional<TransformCategory> category_from_token(std::string_view token);

// Aligned source/English-reference sentence lists with implicit 0-based ids.
struct EvalSet {
    std::string direction;
    std::vector<std::string> sources;
    std::vector<std::string> references;

    std::size_t size() const { return sources.size(); }
};

// One English target candidate: an original reference (transform == nullopt)
// or a transformed hard negative tagged with its category.
struct Candidate {
    std::string text;
    std::size_t origin = 0;
    std::optional<TransformCategory> transform;

    bool is_original() const { return !transform.has_value(); }
    bool operator==(const Candidate&) const = default;
};

// Ordered candidate list: the first num_originals entries are the originals
// in reference order, transformed candidates follow grouped by origin, then
// category, then generation order.
struct CandidateSet {
    std::vector<Candidate> candidates;
    std::size_t num_originals = 0;

    std::size_t size() const { return candidates.size(); }
    bool operator==(const CandidateSet&) const = default;
};

// Throws InvariantViolation when the set breaks its contract (originals
// prefix, valid origins, transform != origin text, duplicate texts,
// per-(origin,category) counts above cap).
void validate(const CandidateSet& set, std::size_t cap = kDefaultCap);

EvalSet load_eval_set(const std::filesystem::path& src_path, const std::filesystem::path& ref_path,
                      std::string direction);

void write_candidate_set(const CandidateSet& set, const std::filesystem::path& path,
                         std::size_t cap = kDefaultCap);
CandidateSet read_candidate_set(const std::filesystem::path& path, std::size_t cap = kDefaultCap);

struct CategoryStats {
    std::uint64_t total = 0;
    double per_original = 0.0;  // total / num_originals, rounded half-up to 2 decimals
};

struct StatsReport {
    std::size_t originals = 0;
    std::map<std::string, CategoryStats> categories;
};

StatsReport candidate_stats(const CandidateSet& set);

// Rounding used for reported per-original averages.
double round2(double x);

}  // namespace xsimkit
