#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "xsimkit/corpus.hpp"
#include "xsimkit/embeddings.hpp"

namespace xsimkit {

enum class MarginType { Absolute, Ratio, Distance };

std::string_view to_token(MarginType m);
std::optional<MarginType> margin_from_token(std::string_view token);

struct MarginConfig {
    MarginType margin = MarginType::Absolute;
    std::size_t k = 4;
};

// Margin scores for every (source, target) pair, row-major src.rows() x
// tgt.rows(). With cosine a and neighborhood average b (mean cosine of each
// side's k nearest neighbors): Absolute -> a, Ratio -> a/b, Distance -> a-b.
// kNN is exhaustive; dot products accumulate in fp64.
std::vector<double> pairwise_scores(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt,
                                    const MarginConfig& cfg);

enum class ErrorKind { Correct, Causality, Entity, Number, Misaligned };

std::string_view to_token(ErrorKind kind);

// Correct: the original of the source's own sentence. Category(c): one of its
// own transforms. Misaligned: any candidate of another origin.
ErrorKind decide_error(std::size_t source_index, const Candidate& predicted);

struct Alignment {
    std::size_t predicted = 0;  // candidate index (into the full candidate set)
    double score = 0.0;
    ErrorKind kind = ErrorKind::Correct;

    bool is_error() const { return kind != ErrorKind::Correct; }
};

struct AlignmentResult {
    std::vector<Alignment> rows;  // one per source sentence
};

// Argmax of the margin score over all candidate rows, ties broken by lowest
// candidate index.
AlignmentResult align(const EmbeddingMatrix& src, const CandidateSet& candidates,
                      const EmbeddingMatrix& cand_emb, const MarginConfig& cfg);

// Same, restricted to the candidate rows in `selected` (indices into the full
// set, strictly increasing). Predictions still refer to full-set indices.
AlignmentResult align_selected(const EmbeddingMatrix& src, const CandidateSet& candidates,
                               const EmbeddingMatrix& cand_emb,
                               std::span<const std::uint32_t> selected, const MarginConfig& cfg);

}  // namespace xsimkit
