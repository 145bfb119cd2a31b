// xsimkit: build hard-negative candidate sets, score sentence encoders via
// margin-based alignment, and validate proxies against downstream scores.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "xsimkit/augment.hpp"
#include "xsimkit/corpus.hpp"
#include "xsimkit/errors.hpp"
#include "xsimkit/manifest.hpp"
#include "xsimkit/report.hpp"
#include "xsimkit/scoring.hpp"
#include "xsimkit/text.hpp"

namespace {

using nlohmann::json;

struct GlobalOptions {
    std::uint64_t seed = 0;
    int threads = 0;
    std::size_t dim = 1024;
    std::vector<std::string> argv;
};

void emit(const json& doc, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw xsimkit::Error("cannot write " + out_path);
    out << doc.dump(2) << "\n";
}

json manifest_json(const GlobalOptions& global, std::uint64_t seed, const json& config,
                   const std::vector<std::filesystem::path>& inputs) {
    return to_json(xsimkit::make_manifest(global.argv, seed, config.dump(), inputs));
}

std::set<xsimkit::TransformCategory> parse_categories(const std::string& value) {
    std::set<xsimkit::TransformCategory> categories;
    for (const std::string& part : xsimkit::split(value, ',')) {
        auto token = xsimkit::lower_ascii(xsimkit::trim(part));
        if (token.empty()) continue;
        auto cat = xsimkit::category_from_token(token);
        if (!cat) throw xsimkit::ConfigError("unknown category '" + token + "'");
        categories.insert(*cat);
    }
    return categories;
}

int run_augment(const GlobalOptions& global, const std::string& refs_path,
                const std::string& lexicon_dir, std::uint64_t seed, std::size_t cap,
                const std::string& categories, const std::string& annotations_path,
                const std::string& out_path) {
    xsimkit::EvalSet eval;
    {
        // augmentation consumes only the English side
        xsimkit::EvalSet loaded = xsimkit::load_eval_set(refs_path, refs_path, "eng-eng");
        eval = std::move(loaded);
    }
    xsimkit::Lexicons lexicons = xsimkit::load_lexicons(lexicon_dir);
    xsimkit::AugmentConfig config;
    config.seed = seed;
    config.cap_per_category = cap;
    if (!categories.empty()) config.categories = parse_categories(categories);

    std::vector<xsimkit::SpanAnnotation> annotations;
    if (!annotations_path.empty()) annotations = xsimkit::load_annotations(annotations_path);

    xsimkit::CandidateSet set = xsimkit::build_candidate_set(eval, lexicons, config, annotations);
    xsimkit::write_candidate_set(set, out_path, config.cap_per_category);

    xsimkit::StatsReport stats = xsimkit::candidate_stats(set);
    std::cerr << "wrote " << set.size() << " candidates (" << stats.originals << " originals) to "
              << out_path << "\n";
    for (const auto& [name, cat] : stats.categories)
        std::cerr << "  " << name << ": " << cat.total << " (" << cat.per_original
                  << " per original)\n";
    return 0;
}

int run_score(const GlobalOptions& global, const std::string& src_emb, const std::string& cand_emb,
              const std::string& candidates_path, std::size_t dim, const std::string& margin,
              std::size_t k, std::size_t cap, const std::string& direction,
              const std::string& out_path) {
    auto margin_type = xsimkit::margin_from_token(margin);
    if (!margin_type) throw xsimkit::ConfigError("unknown margin '" + margin + "'");
    xsimkit::MarginConfig cfg{*margin_type, k};

    xsimkit::CandidateSet set = xsimkit::read_candidate_set(candidates_path, cap);
    xsimkit::EmbeddingMatrix src = xsimkit::load_embeddings(src_emb, dim);
    xsimkit::EmbeddingMatrix cand = xsimkit::load_embeddings(cand_emb, dim);
    src.normalize();
    cand.normalize();

    xsimkit::AlignmentResult result = xsimkit::align(src, set, cand, cfg);
    std::vector<std::string> categories;
    for (xsimkit::TransformCategory c : xsimkit::kAllCategories) {
        for (std::size_t i = set.num_originals; i < set.size(); ++i) {
            if (set.candidates[i].transform == c) {
                categories.emplace_back(xsimkit::to_token(c));
                break;
            }
        }
    }
    xsimkit::ErrorReport report = xsimkit::error_rate(result, direction, categories);

    json config{{"margin", margin}, {"k", k}, {"dim", dim}, {"cap", cap}};
    json doc = to_json(report);
    doc["config"] = config;
    doc["manifest"] = manifest_json(global, 0, config, {src_emb, cand_emb, candidates_path});
    emit(doc, out_path);
    std::cerr << "error rate " << report.error_rate << "% over " << report.total_sources
              << " sources\n";
    return 0;
}

int run_ablate(const GlobalOptions& global, const std::string& src_emb, const std::string& cand_emb,
               const std::string& candidates_path, std::size_t dim, const std::string& margin,
               std::size_t k, std::size_t cap, const std::string& direction,
               const std::string& subsets, const std::string& out_path) {
    auto margin_type = xsimkit::margin_from_token(margin);
    if (!margin_type) throw xsimkit::ConfigError("unknown margin '" + margin + "'");
    xsimkit::MarginConfig cfg{*margin_type, k};

    xsimkit::CandidateSet set = xsimkit::read_candidate_set(candidates_path, cap);
    xsimkit::EmbeddingMatrix src = xsimkit::load_embeddings(src_emb, dim);
    xsimkit::EmbeddingMatrix cand = xsimkit::load_embeddings(cand_emb, dim);
    src.normalize();
    cand.normalize();

    std::vector<xsimkit::AblationCombo> combos;
    if (subsets == "all") {
        combos = xsimkit::ablation_combos();
    } else {
        for (const std::string& part : xsimkit::split(subsets, ';'))
            if (!xsimkit::trim(part).empty()) combos.push_back(xsimkit::parse_combo(xsimkit::trim(part)));
        if (combos.empty()) throw xsimkit::ConfigError("no ablation combos requested");
    }

    json combo_docs = json::array();
    for (const xsimkit::AblationCombo& combo : combos) {
        xsimkit::ErrorReport report = xsimkit::subset_rescore(
            src, set, cand, cfg, combo.subset, combo.include_misaligned, direction);
        combo_docs.push_back(
            {{"name", combo.name}, {"misaligned", combo.include_misaligned}, {"report", to_json(report)}});
        std::cerr << combo.name << ": " << report.error_rate << "%\n";
    }

    json config{{"margin", margin}, {"k", k}, {"dim", dim}, {"cap", cap}, {"subsets", subsets}};
    json doc{{"type", "ablation"}, {"direction", direction}, {"combos", combo_docs}};
    doc["config"] = config;
    doc["manifest"] = manifest_json(global, 0, config, {src_emb, cand_emb, candidates_path});
    emit(doc, out_path);
    return 0;
}

int run_rank(const GlobalOptions& global, const std::string& records_path,
             const std::string& records_b_path, const std::string& polarity_name,
             std::size_t resamples, std::uint64_t seed, const std::string& out_path) {
    xsimkit::Polarity polarity;
    if (polarity_name == "error") polarity = xsimkit::Polarity::ErrorRate;
    else if (polarity_name == "score") polarity = xsimkit::Polarity::Score;
    else throw xsimkit::ConfigError("polarity must be 'error' or 'score'");

    auto records = xsimkit::load_records(records_path);
    xsimkit::RankingReport overall = xsimkit::pairwise_accuracy(records, polarity);

    std::vector<std::filesystem::path> inputs = {records_path};
    json doc{{"type", "ranking"}};
    if (!records_b_path.empty()) {
        auto baseline = xsimkit::load_records(records_b_path);
        overall.p_value = xsimkit::significance(records, baseline, polarity, resamples, seed);
        xsimkit::RankingReport baseline_report = xsimkit::pairwise_accuracy(baseline, polarity);
        doc["baseline"] = to_json(baseline_report);
        inputs.push_back(records_b_path);
    }
    doc["overall"] = to_json(overall);
    // one-sided test against the baseline
    if (overall.p_value) doc["overall"]["significant_at_0.05"] = *overall.p_value < 0.05;

    bool all_tagged = !records.empty();
    for (const auto& rec : records)
        if (!rec.group) all_tagged = false;
    if (all_tagged) {
        xsimkit::SplitReports splits = xsimkit::split_report(records, polarity);
        doc["within"] = to_json(splits.within);
        doc["across"] = to_json(splits.across);
    }

    json config{{"polarity", polarity_name}, {"bootstrap", resamples}, {"seed", seed}};
    doc["config"] = config;
    doc["manifest"] = manifest_json(global, seed, config, inputs);
    emit(doc, out_path);
    if (overall.accuracy)
        std::cerr << "pairwise ranking accuracy " << *overall.accuracy << "% over "
                  << overall.total_pairs() << " pairs\n";
    if (overall.p_value) std::cerr << "p-value vs baseline: " << *overall.p_value << "\n";
    return 0;
}

int run_stats(const GlobalOptions& global, const std::string& candidates_path, std::size_t cap,
              const std::string& out_path) {
    xsimkit::CandidateSet set = xsimkit::read_candidate_set(candidates_path, cap);
    json config{{"cap", cap}};
    json doc = to_json(xsimkit::candidate_stats(set));
    doc["manifest"] = manifest_json(global, 0, config, {candidates_path});
    emit(doc, out_path);
    return 0;
}

int run_report(const std::string& input_path, const std::string& out_path) {
    std::ifstream in(input_path, std::ios::binary);
    if (!in) throw xsimkit::Error("cannot open " + input_path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw xsimkit::FormatError(input_path + ": " + e.what());
    }
    const std::string markdown = xsimkit::render_markdown(doc);
    if (out_path.empty() || out_path == "-") {
        std::cout << markdown;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw xsimkit::Error("cannot write " + out_path);
        out << markdown;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hard-negative evaluation sets and margin-based scoring for bitext mining"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    for (int i = 0; i < argc; ++i) global.argv.emplace_back(argv[i]);
    // manifests record the command name, not the local install path
    if (!global.argv.empty())
        global.argv[0] = std::filesystem::path(global.argv[0]).filename().string();
    app.add_option("--threads", global.threads, "cap OpenMP worker count (0 = library default)");

    // augment
    auto* augment = app.add_subcommand("augment", "build a hard-negative candidate set");
    std::string refs_path, lexicon_dir, annotations_path, aug_out, categories;
    std::uint64_t aug_seed = 0;
    std::size_t aug_cap = xsimkit::kDefaultCap;
    augment->add_option("--refs", refs_path, "English reference sentences, one per line")->required();
    augment->add_option("--lexicons", lexicon_dir, "directory with lexicon TSV files")->required();
    augment->add_option("--seed", aug_seed, "generation seed");
    augment->add_option("--cap", aug_cap, "max transformations per category per sentence");
    augment->add_option("--categories", categories, "comma list: causality,entity,number");
    augment->add_option("--annotations", annotations_path, "extra span annotations TSV");
    augment->add_option("--out", aug_out, "output candidate TSV")->required();

    // score
    auto* score = app.add_subcommand("score", "margin-align sources against candidates");
    std::string src_emb, cand_emb, candidates_path, margin = "absolute", direction, score_out;
    std::size_t k = 4, score_cap = xsimkit::kDefaultCap;
    score->add_option("--src-emb", src_emb, "source embeddings (raw fp32)")->required();
    score->add_option("--cand-emb", cand_emb, "candidate embeddings (raw fp32)")->required();
    score->add_option("--candidates", candidates_path, "candidate TSV")->required();
    score->add_option("--dim", global.dim, "embedding dimensionality");
    score->add_option("--margin", margin, "absolute | ratio | distance");
    score->add_option("-k,--k", k, "margin neighborhood size");
    score->add_option("--cap", score_cap, "per-category cap used to validate the TSV");
    score->add_option("--direction", direction, "language direction label");
    score->add_option("--out", score_out, "output JSON (default stdout)");

    // ablate
    auto* ablate = app.add_subcommand("ablate", "re-score candidate subsets per error category");
    std::string ab_src, ab_cand, ab_candidates, ab_margin = "absolute", ab_direction, ab_out;
    std::string subsets = "all";
    std::size_t ab_k = 4, ab_cap = xsimkit::kDefaultCap;
    ablate->add_option("--src-emb", ab_src)->required();
    ablate->add_option("--cand-emb", ab_cand)->required();
    ablate->add_option("--candidates", ab_candidates)->required();
    ablate->add_option("--dim", global.dim, "embedding dimensionality");
    ablate->add_option("--margin", ab_margin, "absolute | ratio | distance");
    ablate->add_option("-k,--k", ab_k, "margin neighborhood size");
    ablate->add_option("--cap", ab_cap, "per-category cap used to validate the TSV");
    ablate->add_option("--direction", ab_direction, "language direction label");
    ablate->add_option("--subsets", subsets, "'all' or ';'-separated combos like causality+misaligned");
    ablate->add_option("--out", ab_out, "output JSON (default stdout)");

    // rank
    auto* rank = app.add_subcommand("rank", "pairwise ranking accuracy against downstream scores");
    std::string records_path, records_b_path, polarity = "error", rank_out;
    std::size_t resamples = 1000;
    std::uint64_t rank_seed = 0;
    rank->add_option("--records", records_path, "system records TSV")->required();
    rank->add_option("--records-b", records_b_path, "baseline proxy records for significance");
    rank->add_option("--polarity", polarity, "error | score");
    rank->add_option("--bootstrap", resamples, "bootstrap resamples");
    rank->add_option("--seed", rank_seed, "bootstrap seed");
    rank->add_option("--out", rank_out, "output JSON (default stdout)");

    // stats
    auto* stats = app.add_subcommand("stats", "candidate set statistics");
    std::string stats_candidates, stats_out;
    std::size_t stats_cap = xsimkit::kDefaultCap;
    stats->add_option("candidates", stats_candidates, "candidate TSV")->required();
    stats->add_option("--cap", stats_cap, "per-category cap used to validate the TSV");
    stats->add_option("--out", stats_out, "output JSON (default stdout)");

    // report
    auto* report = app.add_subcommand("report", "render a JSON report as Markdown");
    std::string report_input, report_out;
    report->add_option("--input", report_input, "JSON produced by another subcommand")->required();
    report->add_option("--out", report_out, "output Markdown (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // usage problems exit 1; --help exits 0
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (global.threads > 0) omp_set_num_threads(global.threads);

    try {
        if (augment->parsed())
            return run_augment(global, refs_path, lexicon_dir, aug_seed, aug_cap, categories,
                               annotations_path, aug_out);
        if (score->parsed())
            return run_score(global, src_emb, cand_emb, candidates_path, global.dim, margin, k,
                             score_cap, direction, score_out);
        if (ablate->parsed())
            return run_ablate(global, ab_src, ab_cand, ab_candidates, global.dim, ab_margin, ab_k,
                              ab_cap, ab_direction, subsets, ab_out);
        if (rank->parsed())
            return run_rank(global, records_path, records_b_path, polarity, resamples, rank_seed,
                            rank_out);
        if (stats->parsed()) return run_stats(global, stats_candidates, stats_cap, stats_out);
        if (report->parsed()) return run_report(report_input, report_out);
    } catch (const xsimkit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
