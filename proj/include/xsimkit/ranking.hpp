#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace xsimkit {

enum class Polarity { ErrorRate, Score };
enum class Group { Within, Across };

// One (system, language direction) measurement: a proxy value and the
// downstream score it is validated against.
struct SystemRecord {
    std::string system_id;
    std::string direction;
    double proxy = 0.0;
    double downstream = 0.0;
    std::optional<Group> group;
};

struct RankingReport {
    std::optional<double> accuracy;  // percent; empty when there are no pairs
    std::size_t concordant = 0;
    std::size_t discordant = 0;
    std::size_t tied = 0;
    std::map<std::string, std::size_t> pairs_per_direction;
    std::optional<double> p_value;

    std::size_t total_pairs() const { return concordant + discordant + tied; }
};

// TSV: system_id<TAB>direction<TAB>proxy<TAB>downstream[<TAB>group]
std::vector<SystemRecord> load_records(const std::filesystem::path& path);

// Pairwise ranking accuracy over all unordered system pairs within each
// language direction. A pair is concordant when the oriented proxy delta and
// the downstream delta have the same sign; zero deltas are tied and count in
// the denominator only.
RankingReport pairwise_accuracy(std::span<const SystemRecord> records, Polarity polarity);

// Paired bootstrap over system pairs: p = fraction of resamples in which
// proxy A does not beat proxy B. Both record tables must describe the same
// systems and downstream scores. Deterministic for a fixed seed.
double significance(std::span<const SystemRecord> records_a, std::span<const SystemRecord> records_b,
                    Polarity polarity, std::size_t resamples = 1000, std::uint64_t seed = 0);

// Within = both systems tagged Within; Across = exactly one system tagged
// Across. Requires group tags on every record.
struct SplitReports {
    RankingReport within;
    RankingReport across;
};
SplitReports split_report(std::span<const SystemRecord> records, Polarity polarity);

}  // namespace xsimkit
