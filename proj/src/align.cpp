#include "xsimkit/align.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

#include <omp.h>

namespace xsimkit {

std::string_view to_token(MarginType m) {
    switch (m) {
        case MarginType::Absolute: return "absolute";
        case MarginType::Ratio: return "ratio";
        case MarginType::Distance: return "distance";
    }
    return "";
}

std::optional<MarginType> margin_from_token(std::string_view token) {
    if (token == "absolute") return MarginType::Absolute;
    if (token == "ratio") return MarginType::Ratio;
    if (token == "distance") return MarginType::Distance;
    return std::nullopt;
}

std::string_view to_token(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Correct: return "correct";
        case ErrorKind::Causality: return "causality";
        case ErrorKind::Entity: return "entity";
        case ErrorKind::Number: return "number";
        case ErrorKind::Misaligned: return "misaligned";
    }
    return "";
}

ErrorKind decide_error(std::size_t source_index, const Candidate& predicted) {
    if (predicted.origin != source_index) return ErrorKind::Misaligned;
    if (predicted.is_original()) return ErrorKind::Correct;
    switch (*predicted.transform) {
        case TransformCategory::Causality: return ErrorKind::Causality;
        case TransformCategory::Entity: return ErrorKind::Entity;
        case TransformCategory::Number: return ErrorKind::Number;
    }
    return ErrorKind::Misaligned;
}

namespace {

double dot_f64(const float* a, const float* b, std::size_t dim) {
    double s = 0.0;
    for (std::size_t d = 0; d < dim; ++d) s += static_cast<double>(a[d]) * static_cast<double>(b[d]);
    return s;
}

// Sum of the k largest values. The k values are summed in descending order so
// the result does not depend on how the selection algorithm arranges them.
double topk_sum(std::vector<double>& scratch, std::size_t k) {
    std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(k),
                     scratch.end(), std::greater<>());
    std::sort(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(k), std::greater<>());
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += scratch[i];
    return s;
}

double margin_score(MarginType margin, double a, double b) {
    switch (margin) {
        case MarginType::Absolute: return a;
        case MarginType::Ratio: return a / b;
        case MarginType::Distance: return a - b;
    }
    return a;
}

void check_inputs(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt, std::size_t tgt_rows,
                  const MarginConfig& cfg) {
    if (src.dim() != tgt.dim())
        throw DimMismatch("source dim " + std::to_string(src.dim()) + " != target dim " +
                          std::to_string(tgt.dim()));
    if (!src.normalized() || !tgt.normalized())
        throw ConfigError("embeddings must be normalized before scoring");
    if (src.rows() == 0 || tgt_rows == 0) throw ConfigError("empty embedding matrix");
    if (cfg.k < 1 || cfg.k >= std::min(src.rows(), tgt_rows))
        throw ConfigError("margin k = " + std::to_string(cfg.k) +
                          " must satisfy 1 <= k < min(source rows, candidate rows)");
}

}  // namespace

std::vector<double> pairwise_scores(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt,
                                    const MarginConfig& cfg) {
    check_inputs(src, tgt, tgt.rows(), cfg);
    const std::size_t n = src.rows(), m = tgt.rows(), dim = src.dim();

    std::vector<double> cos(n * m);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        for (std::size_t j = 0; j < m; ++j)
            cos[static_cast<std::size_t>(i) * m + j] = dot_f64(src.row(i), tgt.row(j), dim);
    }
    if (cfg.margin == MarginType::Absolute) return cos;

    const double denom = 2.0 * static_cast<double>(cfg.k);
    std::vector<double> src_nn(n), tgt_nn(m);
#pragma omp parallel
    {
        std::vector<double> scratch;
#pragma omp for schedule(static) nowait
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            scratch.assign(cos.begin() + i * static_cast<long long>(m),
                           cos.begin() + (i + 1) * static_cast<long long>(m));
            src_nn[static_cast<std::size_t>(i)] = topk_sum(scratch, cfg.k);
        }
#pragma omp for schedule(static)
        for (long long j = 0; j < static_cast<long long>(m); ++j) {
            scratch.resize(n);
            for (std::size_t i = 0; i < n; ++i) scratch[i] = cos[i * m + static_cast<std::size_t>(j)];
            tgt_nn[static_cast<std::size_t>(j)] = topk_sum(scratch, cfg.k);
        }
    }

    std::vector<double> scores(n * m);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double a = cos[static_cast<std::size_t>(i) * m + j];
            const double b = (src_nn[static_cast<std::size_t>(i)] + tgt_nn[j]) / denom;
            scores[static_cast<std::size_t>(i) * m + j] = margin_score(cfg.margin, a, b);
        }
    }
    return scores;
}

AlignmentResult align_selected(const EmbeddingMatrix& src, const CandidateSet& candidates,
                               const EmbeddingMatrix& cand_emb,
                               std::span<const std::uint32_t> selected, const MarginConfig& cfg) {
    if (cand_emb.rows() != candidates.size())
        throw RowCountMismatch("candidate embeddings have " + std::to_string(cand_emb.rows()) +
                               " rows but the candidate set has " +
                               std::to_string(candidates.size()));
    if (src.rows() != candidates.num_originals)
        throw RowCountMismatch("source embeddings have " + std::to_string(src.rows()) +
                               " rows but the set has " + std::to_string(candidates.num_originals) +
                               " originals");
    for (std::uint32_t j : selected) {
        if (j >= candidates.size()) throw RowCountMismatch("selected index out of range");
    }
    check_inputs(src, cand_emb, selected.size(), cfg);

    const std::size_t n = src.rows(), m = selected.size(), dim = src.dim();
    const bool need_nn = cfg.margin != MarginType::Absolute;
    const double denom = 2.0 * static_cast<double>(cfg.k);

    // candidate-side neighborhood averages over the source rows
    std::vector<double> cand_nn(need_nn ? m : 0);
    if (need_nn) {
#pragma omp parallel
        {
            std::vector<double> scratch(n);
#pragma omp for schedule(static)
            for (long long jj = 0; jj < static_cast<long long>(m); ++jj) {
                const float* y = cand_emb.row(selected[static_cast<std::size_t>(jj)]);
                for (std::size_t i = 0; i < n; ++i) scratch[i] = dot_f64(y, src.row(i), dim);
                cand_nn[static_cast<std::size_t>(jj)] = topk_sum(scratch, cfg.k);
            }
        }
    }

    AlignmentResult result;
    result.rows.resize(n);
#pragma omp parallel
    {
        std::vector<double> cos_row(m);
        std::vector<double> scratch;
#pragma omp for schedule(static)
        for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
            const std::size_t i = static_cast<std::size_t>(ii);
            const float* x = src.row(i);
            for (std::size_t j = 0; j < m; ++j)
                cos_row[j] = dot_f64(x, cand_emb.row(selected[j]), dim);

            double src_nn = 0.0;
            if (need_nn) {
                scratch = cos_row;
                src_nn = topk_sum(scratch, cfg.k);
            }

            std::size_t best = 0;
            double best_score = -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < m; ++j) {
                const double b = need_nn ? (src_nn + cand_nn[j]) / denom : 0.0;
                const double score = margin_score(cfg.margin, cos_row[j], b);
                if (score > best_score) {  // ties keep the lowest index
                    best_score = score;
                    best = j;
                }
            }
            const std::size_t predicted = selected[best];
            result.rows[i] = {predicted, best_score, decide_error(i, candidates.candidates[predicted])};
        }
    }
    return result;
}

AlignmentResult align(const EmbeddingMatrix& src, const CandidateSet& candidates,
                      const EmbeddingMatrix& cand_emb, const MarginConfig& cfg) {
    std::vector<std::uint32_t> all(candidates.size());
    std::iota(all.begin(), all.end(), 0u);
    return align_selected(src, candidates, cand_emb, all, cfg);
}

}  // namespace xsimkit
