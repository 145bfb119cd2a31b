#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace xsimkit {

// Dense row-major fp32 sentence-embedding matrix.
class EmbeddingMatrix {
  public:
    EmbeddingMatrix() = default;
    EmbeddingMatrix(std::size_t rows, std::size_t dim)
        : data_(rows * dim, 0.0f), rows_(rows), dim_(dim) {}

    // Takes ownership of row-major data; data.size() must be divisible by dim.
    static EmbeddingMatrix from_data(std::vector<float> data, std::size_t dim);

    std::size_t rows() const { return rows_; }
    std::size_t dim() const { return dim_; }
    bool normalized() const { return normalized_; }

    const float* row(std::size_t i) const { return data_.data() + i * dim_; }
    float* row(std::size_t i) { return data_.data() + i * dim_; }
    std::span<const float> values() const { return data_; }
    std::span<float> values() { return data_; }

    // L2-normalizes every row in place (norms accumulated in fp64).
    // Throws InvalidValue on zero rows.
    void normalize();

  private:
    std::vector<float> data_;
    std::size_t rows_ = 0;
    std::size_t dim_ = 0;
    bool normalized_ = false;
};

// Raw little-endian fp32, row-major, no header. Row count inferred from the
// file size; NaN/Inf values rejected with the offending row reported.
EmbeddingMatrix load_embeddings(const std::filesystem::path& path, std::size_t dim);

void write_embeddings(const EmbeddingMatrix& matrix, const std::filesystem::path& path);

}  // namespace xsimkit
