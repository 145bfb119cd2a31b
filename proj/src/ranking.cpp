#include "xsimkit/ranking.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include <omp.h>

#include "xsimkit/errors.hpp"
#include "xsimkit/rng.hpp"
#include "xsimkit/text.hpp"

namespace xsimkit {

std::vector<SystemRecord> load_records(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::vector<SystemRecord> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line.front() == '#') continue;
        auto fields = split(line, '\t');
        if (fields.size() != 4 && fields.size() != 5)
            throw FormatError(path.string() + ":" + std::to_string(lineno) +
                              ": expected system_id<TAB>direction<TAB>proxy<TAB>downstream[<TAB>group]");
        SystemRecord rec;
        rec.system_id = fields[0];
        rec.direction = fields[1];
        try {
            rec.proxy = std::stod(fields[2]);
            rec.downstream = std::stod(fields[3]);
        } catch (const std::exception&) {
            throw FormatError(path.string() + ":" + std::to_string(lineno) + ": bad numeric field");
        }
        if (!std::isfinite(rec.proxy) || !std::isfinite(rec.downstream))
            throw FormatError(path.string() + ":" + std::to_string(lineno) +
                              ": proxy and downstream must be finite");
        if (fields.size() == 5) {
            std::string g = lower_ascii(trim(fields[4]));
            if (g == "within") rec.group = Group::Within;
            else if (g == "across") rec.group = Group::Across;
            else
                throw FormatError(path.string() + ":" + std::to_string(lineno) + ": unknown group '" +
                                  fields[4] + "'");
        }
        records.push_back(std::move(rec));
    }
    return records;
}

namespace {

int sign(double x) { return (x > 0.0) - (x < 0.0); }

struct PairRef {
    std::size_t a = 0;
    std::size_t b = 0;
};

// Unordered system pairs, formed only within a language direction.
// Directions iterate in sorted order, members in input order.
std::vector<PairRef> enumerate_pairs(std::span<const SystemRecord> records) {
    std::map<std::string_view, std::vector<std::size_t>> by_direction;
    for (std::size_t i = 0; i < records.size(); ++i)
        by_direction[records[i].direction].push_back(i);
    std::vector<PairRef> pairs;
    for (const auto& [direction, members] : by_direction) {
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j)
                pairs.push_back({members[i], members[j]});
    }
    if (pairs.empty())
        throw InsufficientSystems("need at least two systems in one language direction");
    return pairs;
}

// +1 concordant, -1 discordant, 0 tied (either delta is zero).
int concordance(const SystemRecord& a, const SystemRecord& b, Polarity polarity) {
    double proxy_delta = a.proxy - b.proxy;
    if (polarity == Polarity::ErrorRate) proxy_delta = -proxy_delta;  // lower error is better
    const int sp = sign(proxy_delta);
    const int sd = sign(a.downstream - b.downstream);
    if (sp == 0 || sd == 0) return 0;
    return sp == sd ? 1 : -1;
}

RankingReport accumulate(std::span<const SystemRecord> records, const std::vector<PairRef>& pairs,
                         Polarity polarity) {
    RankingReport report;
    for (const PairRef& p : pairs) {
        ++report.pairs_per_direction[records[p.a].direction];
        switch (concordance(records[p.a], records[p.b], polarity)) {
            case 1: ++report.concordant; break;
            case -1: ++report.discordant; break;
            default: ++report.tied; break;
        }
    }
    if (report.total_pairs() > 0)
        report.accuracy = 100.0 * static_cast<double>(report.concordant) /
                          static_cast<double>(report.total_pairs());
    return report;
}

}  // namespace

RankingReport pairwise_accuracy(std::span<const SystemRecord> records, Polarity polarity) {
    return accumulate(records, enumerate_pairs(records), polarity);
}

double significance(std::span<const SystemRecord> records_a, std::span<const SystemRecord> records_b,
                    Polarity polarity, std::size_t resamples, std::uint64_t seed) {
    if (records_a.size() != records_b.size())
        throw PopulationMismatch("record tables differ in size");
    if (resamples == 0) throw ConfigError("resamples must be > 0");

    // match B to A by (direction, system id); downstream scores must agree
    std::map<std::pair<std::string_view, std::string_view>, std::size_t> b_index;
    for (std::size_t i = 0; i < records_b.size(); ++i) {
        if (!b_index.emplace(std::pair{std::string_view(records_b[i].direction),
                                       std::string_view(records_b[i].system_id)},
                             i)
                 .second)
            throw PopulationMismatch("duplicate system '" + records_b[i].system_id + "' in " +
                                     records_b[i].direction);
    }
    std::vector<SystemRecord> matched_b;
    matched_b.reserve(records_a.size());
    for (const SystemRecord& rec : records_a) {
        auto it = b_index.find({rec.direction, rec.system_id});
        if (it == b_index.end())
            throw PopulationMismatch("system '" + rec.system_id + "' in " + rec.direction +
                                     " missing from the second table");
        const SystemRecord& other = records_b[it->second];
        if (other.downstream != rec.downstream)
            throw PopulationMismatch("downstream scores differ for system '" + rec.system_id +
                                     "' in " + rec.direction);
        matched_b.push_back(other);
    }

    const std::vector<PairRef> pairs = enumerate_pairs(records_a);
    const std::size_t n = pairs.size();
    std::vector<signed char> conc_a(n), conc_b(n);
    for (std::size_t i = 0; i < n; ++i) {
        conc_a[i] = static_cast<signed char>(
            concordance(records_a[pairs[i].a], records_a[pairs[i].b], polarity) == 1);
        conc_b[i] = static_cast<signed char>(
            concordance(matched_b[pairs[i].a], matched_b[pairs[i].b], polarity) == 1);
    }

    // resample system pairs with replacement; each resample has its own
    // substream so the loop parallelizes without changing the result
    std::size_t not_better = 0;
#pragma omp parallel for schedule(static) reduction(+ : not_better)
    for (long long r = 0; r < static_cast<long long>(resamples); ++r) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(r), 0x626f6f74ULL));
        std::size_t wins_a = 0, wins_b = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t pick = rng.below(n);
            wins_a += static_cast<std::size_t>(conc_a[pick]);
            wins_b += static_cast<std::size_t>(conc_b[pick]);
        }
        if (wins_a <= wins_b) ++not_better;
    }
    return static_cast<double>(not_better) / static_cast<double>(resamples);
}

SplitReports split_report(std::span<const SystemRecord> records, Polarity polarity) {
    for (const SystemRecord& rec : records) {
        if (!rec.group)
            throw MissingGroupTags("system '" + rec.system_id + "' in " + rec.direction +
                                   " has no group tag");
    }
    std::vector<PairRef> within, across;
    for (const PairRef& p : enumerate_pairs(records)) {
        const bool a_across = records[p.a].group == Group::Across;
        const bool b_across = records[p.b].group == Group::Across;
        if (!a_across && !b_across) within.push_back(p);
        else if (a_across != b_across) across.push_back(p);
    }
    SplitReports reports;
    reports.within = accumulate(records, within, polarity);
    reports.across = accumulate(records, across, polarity);
    return reports;
}

}  // namespace xsimkit
