#include "xsimkit/corpus.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "xsimkit/text.hpp"

namespace xsimkit {

std::string_view to_token(TransformCategory c) {
    switch (c) {
        case TransformCategory::Causality: return "causality";
        case TransformCategory::Entity: return "entity";
        case TransformCategory::Number: return "number";
    }
    return "";
}

std::optional<TransformCategory> category_from_token(std::string_view token) {
    if (token == "causality") return TransformCategory::Causality;
    if (token == "entity") return TransformCategory::Entity;
    if (token == "number") return TransformCategory::Number;
    return std::nullopt;
}

namespace {

std::vector<std::string> read_sentence_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!valid_utf8(line))
            throw EncodingError(path.string() + ":" + std::to_string(lineno) + ": invalid UTF-8");
        if (trim(line).empty())
            throw EmptyLine(path.string() + ":" + std::to_string(lineno) + ": blank line");
        lines.push_back(line);
    }
    return lines;
}

}  // namespace

EvalSet load_eval_set(const std::filesystem::path& src_path, const std::filesystem::path& ref_path,
                      std::string direction) {
    EvalSet set;
    set.direction = std::move(direction);
    set.sources = read_sentence_file(src_path);
    set.references = read_sentence_file(ref_path);
    if (set.sources.size() != set.references.size())
        throw LengthMismatch(src_path.string() + " has " + std::to_string(set.sources.size()) +
                             " lines, " + ref_path.string() + " has " +
                             std::to_string(set.references.size()));
    if (set.sources.empty()) throw EmptyLine("evaluation set is empty");
    return set;
}

void validate(const CandidateSet& set, std::size_t cap) {
    const auto& cands = set.candidates;
    const std::size_t n = set.num_originals;
    if (n == 0 || cands.size() < n) throw InvariantViolation("candidate set has no originals");
    std::set<std::string_view> seen;
    std::map<std::pair<std::size_t, TransformCategory>, std::size_t> per_category;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const Candidate& c = cands[i];
        if (c.text.find('\t') != std::string::npos || c.text.find('\n') != std::string::npos)
            throw InvariantViolation("candidate " + std::to_string(i) + " contains tab or newline");
        if (c.origin >= n)
            throw InvariantViolation("candidate " + std::to_string(i) + " has origin " +
                                     std::to_string(c.origin) + " >= " + std::to_string(n));
        if (i < n) {
            if (!c.is_original() || c.origin != i)
                throw InvariantViolation("entry " + std::to_string(i) +
                                         " of the originals prefix is not original " + std::to_string(i));
        } else {
            if (c.is_original())
                throw InvariantViolation("original found after the originals prefix at " +
                                         std::to_string(i));
            if (c.text == cands[c.origin].text)
                throw InvariantViolation("transformed candidate " + std::to_string(i) +
                                         " equals its origin reference");
            std::size_t& count = per_category[{c.origin, *c.transform}];
            if (++count > cap)
                throw InvariantViolation("origin " + std::to_string(c.origin) + " exceeds cap " +
                                         std::to_string(cap) + " for category " +
                                         std::string(to_token(*c.transform)));
        }
        if (!seen.insert(c.text).second)
            throw InvariantViolation("duplicate candidate text at " + std::to_string(i));
    }
}

void write_candidate_set(const CandidateSet& set, const std::filesystem::path& path,
                         std::size_t cap) {
    validate(set, cap);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << kCandidateHeader << '\n';
    for (const Candidate& c : set.candidates) {
        std::string_view kind = c.is_original() ? std::string_view("original") : to_token(*c.transform);
        out << c.text << '\t' << c.origin << '\t' << kind << '\n';
    }
    if (!out) throw Error("write failed for " + path.string());
}

CandidateSet read_candidate_set(const std::filesystem::path& path, std::size_t cap) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw FormatError(path.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCandidateHeader)
        throw FormatError(path.string() + ": missing header '" + std::string(kCandidateHeader) + "'");

    CandidateSet set;
    std::size_t lineno = 1;
    bool in_prefix = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!valid_utf8(line))
            throw EncodingError(path.string() + ":" + std::to_string(lineno) + ": invalid UTF-8");
        auto fields = split(line, '\t');
        if (fields.size() != 3)
            throw FormatError(path.string() + ":" + std::to_string(lineno) + ": expected 3 columns, got " +
                              std::to_string(fields.size()));
        Candidate c;
        c.text = fields[0];
        try {
            std::size_t pos = 0;
            c.origin = std::stoull(fields[1], &pos);
            if (pos != fields[1].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw FormatError(path.string() + ":" + std::to_string(lineno) + ": bad origin '" +
                              fields[1] + "'");
        }
        if (fields[2] == "original") {
            c.transform = std::nullopt;
        } else if (auto cat = category_from_token(fields[2])) {
            c.transform = cat;
        } else {
            throw FormatError(path.string() + ":" + std::to_string(lineno) + ": unknown kind '" +
                              fields[2] + "'");
        }
        if (in_prefix && c.is_original()) {
            ++set.num_originals;
        } else {
            in_prefix = false;
        }
        set.candidates.push_back(std::move(c));
    }
    validate(set, cap);
    return set;
}

double round2(double x) { return std::floor(x * 100.0 + 0.5) / 100.0; }

StatsReport candidate_stats(const CandidateSet& set) {
    StatsReport report;
    report.originals = set.num_originals;
    for (TransformCategory c : kAllCategories) report.categories[std::string(to_token(c))] = {};
    for (std::size_t i = set.num_originals; i < set.candidates.size(); ++i) {
        const Candidate& c = set.candidates[i];
        if (!c.is_original()) ++report.categories[std::string(to_token(*c.transform))].total;
    }
    for (auto& [name, stats] : report.categories) {
        if (report.originals > 0)
            stats.per_original = round2(static_cast<double>(stats.total) /
                                        static_cast<double>(report.originals));
    }
    return report;
}

}  // namespace xsimkit
