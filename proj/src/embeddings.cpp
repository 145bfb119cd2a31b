#include "xsimkit/embeddings.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "xsimkit/errors.hpp"

namespace xsimkit {

static_assert(std::endian::native == std::endian::little,
              "embedding files are little-endian fp32; big-endian hosts are unsupported");

EmbeddingMatrix EmbeddingMatrix::from_data(std::vector<float> data, std::size_t dim) {
    if (dim == 0) throw DimMismatch("dim must be > 0");
    if (data.size() % dim != 0)
        throw SizeMismatch("data length " + std::to_string(data.size()) +
                           " is not a multiple of dim " + std::to_string(dim));
    EmbeddingMatrix m;
    m.rows_ = data.size() / dim;
    m.dim_ = dim;
    m.data_ = std::move(data);
    return m;
}

void EmbeddingMatrix::normalize() {
    if (normalized_) return;
    for (std::size_t i = 0; i < rows_; ++i) {
        float* r = row(i);
        double sq = 0.0;
        for (std::size_t d = 0; d < dim_; ++d) sq += static_cast<double>(r[d]) * r[d];
        if (sq <= 0.0)
            throw InvalidValue("row " + std::to_string(i) + " has zero norm");
        const double inv = 1.0 / std::sqrt(sq);
        for (std::size_t d = 0; d < dim_; ++d) r[d] = static_cast<float>(r[d] * inv);
    }
    normalized_ = true;
}

EmbeddingMatrix load_embeddings(const std::filesystem::path& path, std::size_t dim) {
    if (dim == 0) throw DimMismatch("dim must be > 0");
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw Error("cannot open " + path.string());
    const std::streamoff size = in.tellg();
    const std::size_t row_bytes = 4 * dim;
    if (size <= 0 || static_cast<std::size_t>(size) % row_bytes != 0)
        throw SizeMismatch(path.string() + ": file size " + std::to_string(size) +
                           " is not a multiple of 4*dim = " + std::to_string(row_bytes));
    const std::size_t rows = static_cast<std::size_t>(size) / row_bytes;
    std::vector<float> data(rows * dim);
    in.seekg(0);
    in.read(reinterpret_cast<char*>(data.data()), size);
    if (!in) throw Error("read failed for " + path.string());
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!std::isfinite(data[i]))
            throw InvalidValue(path.string() + ": non-finite value in row " +
                               std::to_string(i / dim));
    }
    return EmbeddingMatrix::from_data(std::move(data), dim);
}

void write_embeddings(const EmbeddingMatrix& matrix, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    const auto values = matrix.values();
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(float)));
    if (!out) throw Error("write failed for " + path.string());
}

}  // namespace xsimkit
