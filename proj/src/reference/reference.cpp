#include "reference.hpp"

#include <algorithm>
#include <functional>

namespace xsimkit::reference {

double cosine(const EmbeddingMatrix& a, std::size_t i, const EmbeddingMatrix& b, std::size_t j) {
    const float* x = a.row(i);
    const float* y = b.row(j);
    double s = 0.0;
    for (std::size_t d = 0; d < a.dim(); ++d)
        s += static_cast<double>(x[d]) * static_cast<double>(y[d]);
    return s;
}

double neighborhood_mean(const EmbeddingMatrix& from, std::size_t i, const EmbeddingMatrix& pool,
                         std::size_t k) {
    std::vector<double> sims(pool.rows());
    for (std::size_t j = 0; j < pool.rows(); ++j) sims[j] = cosine(from, i, pool, j);
    std::sort(sims.begin(), sims.end(), std::greater<>());
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) sum += sims[j];
    return sum / static_cast<double>(k);
}

double margin_score(const EmbeddingMatrix& src, std::size_t i, const EmbeddingMatrix& tgt,
                    std::size_t j, const MarginConfig& cfg) {
    const double a = cosine(src, i, tgt, j);
    if (cfg.margin == MarginType::Absolute) return a;
    const double b =
        (neighborhood_mean(src, i, tgt, cfg.k) + neighborhood_mean(tgt, j, src, cfg.k)) / 2.0;
    return cfg.margin == MarginType::Ratio ? a / b : a - b;
}

std::vector<double> score_matrix(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt,
                                 const MarginConfig& cfg) {
    // neighborhood means depend on one row only; compute each once
    std::vector<double> src_mean(src.rows()), tgt_mean(tgt.rows());
    if (cfg.margin != MarginType::Absolute) {
        for (std::size_t i = 0; i < src.rows(); ++i)
            src_mean[i] = neighborhood_mean(src, i, tgt, cfg.k);
        for (std::size_t j = 0; j < tgt.rows(); ++j)
            tgt_mean[j] = neighborhood_mean(tgt, j, src, cfg.k);
    }
    std::vector<double> scores(src.rows() * tgt.rows());
    for (std::size_t i = 0; i < src.rows(); ++i) {
        for (std::size_t j = 0; j < tgt.rows(); ++j) {
            const double a = cosine(src, i, tgt, j);
            double s = a;
            if (cfg.margin != MarginType::Absolute) {
                const double b = (src_mean[i] + tgt_mean[j]) / 2.0;
                s = cfg.margin == MarginType::Ratio ? a / b : a - b;
            }
            scores[i * tgt.rows() + j] = s;
        }
    }
    return scores;
}

std::vector<std::size_t> predictions(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt,
                                     const MarginConfig& cfg) {
    const std::vector<double> scores = score_matrix(src, tgt, cfg);
    std::vector<std::size_t> best(src.rows());
    for (std::size_t i = 0; i < src.rows(); ++i) {
        std::size_t arg = 0;
        for (std::size_t j = 1; j < tgt.rows(); ++j) {
            if (scores[i * tgt.rows() + j] > scores[i * tgt.rows() + arg]) arg = j;
        }
        best[i] = arg;
    }
    return best;
}

double cosine_argmax_error_rate(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt) {
    std::size_t errors = 0;
    for (std::size_t i = 0; i < src.rows(); ++i) {
        std::size_t arg = 0;
        double top = cosine(src, i, tgt, 0);
        for (std::size_t j = 1; j < tgt.rows(); ++j) {
            const double s = cosine(src, i, tgt, j);
            if (s > top) {
                top = s;
                arg = j;
            }
        }
        if (arg != i) ++errors;
    }
    return 100.0 * static_cast<double>(errors) / static_cast<double>(src.rows());
}

}  // namespace xsimkit::reference
