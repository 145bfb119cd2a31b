#pragma once

// Serial reference implementation of margin scoring and alignment. Written
// independently of the OpenMP kernels in src/align.cpp: one pair at a time,
// full sorts for the neighborhoods, no shared scoring code. Tests compare the
// production kernels against this, and tools/bench_align.cpp benchmarks the
// two against each other. Not linked into the library or the CLI.

#include <cstddef>
#include <vector>

#include "xsimkit/align.hpp"
#include "xsimkit/embeddings.hpp"

namespace xsimkit::reference {

double cosine(const EmbeddingMatrix& a, std::size_t i, const EmbeddingMatrix& b, std::size_t j);

// Mean cosine between row i of `from` and its k nearest rows of `pool`.
double neighborhood_mean(const EmbeddingMatrix& from, std::size_t i, const EmbeddingMatrix& pool,
                         std::size_t k);

double margin_score(const EmbeddingMatrix& src, std::size_t i, const EmbeddingMatrix& tgt,
                    std::size_t j, const MarginConfig& cfg);

std::vector<double> score_matrix(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt,
                                 const MarginConfig& cfg);

// Argmax per source row, lowest index on ties.
std::vector<std::size_t> predictions(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt,
                                     const MarginConfig& cfg);

// Classic xsim as a standalone routine: cosine argmax over the candidate
// rows, error when the winner is not the source's own row.
double cosine_argmax_error_rate(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt);

}  // namespace xsimkit::reference
