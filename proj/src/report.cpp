#include "xsimkit/report.hpp"

#include <cstdio>

#include "xsimkit/errors.hpp"

namespace xsimkit {

namespace {

std::string fmt2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string title_case(std::string s) {
    if (!s.empty() && s.front() >= 'a' && s.front() <= 'z')
        s.front() = static_cast<char>(s.front() - 'a' + 'A');
    return s;
}

std::string stats_markdown(const nlohmann::json& doc) {
    std::string out;
    out += "| | Total # | # per orig. |\n";
    out += "| --- | --- | --- |\n";
    out += "| Original | " + std::to_string(doc.at("originals").get<std::uint64_t>()) + " | - |\n";
    for (const char* name : {"causality", "entity", "number"}) {
        const auto& cat = doc.at("categories").at(name);
        out += "| " + title_case(name) + " | " +
               std::to_string(cat.at("total").get<std::uint64_t>()) + " | " +
               fmt2(cat.at("per_original").get<double>()) + " |\n";
    }
    return out;
}

std::string score_markdown(const nlohmann::json& doc) {
    std::string out;
    out += "| Direction | Error rate |\n";
    out += "| --- | --- |\n";
    out += "| " + doc.at("direction").get<std::string>() + " | " +
           fmt2(doc.at("error_rate").get<double>()) + " |\n\n";
    out += "| Error kind | Count | Percent |\n";
    out += "| --- | --- | --- |\n";
    for (const auto& [kind, entry] : doc.at("errors").items()) {
        out += "| " + title_case(kind) + " | " +
               std::to_string(entry.at("count").get<std::uint64_t>()) + " | " +
               fmt2(entry.at("percent").get<double>()) + " |\n";
    }
    return out;
}

std::string ablation_markdown(const nlohmann::json& doc) {
    std::string out;
    out += "| Combination | Error rate |\n";
    out += "| --- | --- |\n";
    for (const auto& combo : doc.at("combos")) {
        out += "| " + combo.at("name").get<std::string>() + " | " +
               fmt2(combo.at("report").at("error_rate").get<double>()) + " |\n";
    }
    return out;
}

std::string ranking_row(const nlohmann::json& report) {
    if (report.contains("accuracy") && !report.at("accuracy").is_null())
        return fmt2(report.at("accuracy").get<double>());
    return "-";
}

std::string ranking_markdown(const nlohmann::json& doc) {
    std::string out;
    if (doc.contains("within") && doc.contains("across")) {
        out += "| Metric | Within | Across |\n";
        out += "| --- | --- | --- |\n";
        out += "| " + doc.value("metric", std::string("proxy")) + " | " +
               ranking_row(doc.at("within")) + " | " + ranking_row(doc.at("across")) + " |\n";
        if (!doc.contains("overall")) return out;
        out += "\n";
    }
    const nlohmann::json& overall = doc.contains("overall") ? doc.at("overall") : doc;
    out += "| Metric | Accuracy | Pairs |\n";
    out += "| --- | --- | --- |\n";
    out += "| " + doc.value("metric", std::string("proxy")) + " | " + ranking_row(overall) + " | " +
           std::to_string(overall.at("total_pairs").get<std::uint64_t>()) + " |\n";
    if (overall.contains("p_value") && !overall.at("p_value").is_null())
        out += "\np-value vs baseline: " + fmt2(overall.at("p_value").get<double>()) + "\n";
    return out;
}

}  // namespace

nlohmann::json to_json(const StatsReport& report) {
    nlohmann::json categories = nlohmann::json::object();
    for (const auto& [name, stats] : report.categories)
        categories[name] = {{"total", stats.total}, {"per_original", stats.per_original}};
    return nlohmann::json{{"type", "stats"}, {"originals", report.originals},
                          {"categories", categories}};
}

nlohmann::json to_json(const ErrorReport& report) {
    nlohmann::json errors = nlohmann::json::object();
    for (const auto& [kind, kc] : report.by_kind)
        errors[kind] = {{"count", kc.count}, {"percent", kc.percent}};
    return nlohmann::json{{"type", "score"},
                          {"direction", report.direction},
                          {"total_sources", report.total_sources},
                          {"total_errors", report.total_errors},
                          {"error_rate", report.error_rate},
                          {"errors", errors},
                          {"counted", report.counted_kinds},
                          {"categories_included", report.categories_included}};
}

nlohmann::json to_json(const RankingReport& report) {
    nlohmann::json doc{{"type", "ranking"},
                       {"concordant", report.concordant},
                       {"discordant", report.discordant},
                       {"tied", report.tied},
                       {"total_pairs", report.total_pairs()},
                       {"pairs_per_direction", report.pairs_per_direction}};
    doc["accuracy"] = report.accuracy ? nlohmann::json(*report.accuracy) : nlohmann::json();
    if (report.p_value) doc["p_value"] = *report.p_value;
    return doc;
}

std::string render_markdown(const nlohmann::json& doc) {
    const std::string type = doc.value("type", std::string());
    if (type == "stats") return stats_markdown(doc);
    if (type == "score") return score_markdown(doc);
    if (type == "ablation") return ablation_markdown(doc);
    if (type == "ranking") return ranking_markdown(doc);
    throw FormatError("cannot render document of type '" + type + "'");
}

}  // namespace xsimkit
