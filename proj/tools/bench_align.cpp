// Benchmark: serial reference kernels vs the OpenMP alignment kernels.
//
//   ./bench_align [n_src] [n_cand] [dim] [k]
//
// Checks that both paths produce identical predictions before timing.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <vector>

#include <omp.h>

#include "reference.hpp"
#include "xsimkit/align.hpp"
#include "xsimkit/rng.hpp"

using namespace xsimkit;
using Clock = std::chrono::steady_clock;

namespace {

EmbeddingMatrix random_matrix(std::size_t rows, std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<float> data(rows * dim);
    for (float& v : data)
        v = static_cast<float>(static_cast<std::int64_t>(rng.below(255)) - 127) / 128.0f;
    for (std::size_t r = 0; r < rows; ++r) {
        if (data[r * dim] == 0.0f) data[r * dim] = 1.0f;
    }
    auto m = EmbeddingMatrix::from_data(std::move(data), dim);
    m.normalize();
    return m;
}

CandidateSet skeleton(std::size_t originals, std::size_t total) {
    CandidateSet set;
    set.num_originals = originals;
    for (std::size_t i = 0; i < originals; ++i)
        set.candidates.push_back({"o" + std::to_string(i), i, std::nullopt});
    for (std::size_t j = originals; j < total; ++j)
        set.candidates.push_back({"t" + std::to_string(j), j % originals,
                                  static_cast<TransformCategory>(j % 3)});
    return set;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n_src = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 500;
    const std::size_t n_cand = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 8000;
    const std::size_t dim = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 256;
    const std::size_t k = argc > 4 ? std::strtoull(argv[4], nullptr, 10) : 4;

    std::printf("align benchmark: %zu sources x %zu candidates, dim %zu, k %zu\n", n_src, n_cand,
                dim, k);

    EmbeddingMatrix src = random_matrix(n_src, dim, 1);
    EmbeddingMatrix cand = random_matrix(n_cand, dim, 2);
    CandidateSet set = skeleton(n_src, n_cand);
    MarginConfig cfg{MarginType::Ratio, k};

    auto t0 = Clock::now();
    std::vector<std::size_t> serial = reference::predictions(src, cand, cfg);
    const double serial_s = seconds_since(t0);
    std::printf("%-28s %8.3f s\n", "serial reference", serial_s);

    const int max_threads = omp_get_max_threads();
    for (int threads = 1; threads <= max_threads; threads *= 2) {
        omp_set_num_threads(threads);
        t0 = Clock::now();
        AlignmentResult result = align(src, set, cand, cfg);
        const double omp_s = seconds_since(t0);

        for (std::size_t i = 0; i < n_src; ++i) {
            if (result.rows[i].predicted != serial[i]) {
                std::fprintf(stderr, "MISMATCH at source %zu: omp=%zu serial=%zu\n", i,
                             result.rows[i].predicted, serial[i]);
                return 1;
            }
        }
        std::printf("openmp kernel (%2d threads)   %8.3f s   speedup %.2fx\n", threads, omp_s,
                    serial_s / omp_s);
    }
    return 0;
}
