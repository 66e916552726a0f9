#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ordsec/ordinal_encoding.hpp"
#include "ordsec/signal_sources.hpp"
#include "ordsec/time_series.hpp"

namespace ordsec {

/// Delay embedding: dimension M, lag T in samples.
struct EmbeddingConfig {
    int dim = 3;
    int lag = 9;

    void validate() const;
    /// Lorenz (3, 9), Rossler (3, 144), Mackey-Glass (2, 204).
    static EmbeddingConfig for_system(System system);
};

/// Row-major cloud of points (x_k, x_{k+T}, ..., x_{k+(M-1)T}).
struct EmbeddedCloud {
    int dim = 0;
    std::vector<double> coords;

    std::size_t size() const noexcept { return dim == 0 ? 0 : coords.size() / dim; }
    std::span<const double> point(std::size_t k) const {
        return std::span<const double>(coords).subspan(k * dim, dim);
    }
};

EmbeddedCloud delay_embed(const TimeSeries& series, const EmbeddingConfig& cfg);

/// Ordinal window spanning the embedding window (M-1)T with m points.
/// Throws ConfigError (suggesting the nearest valid m) when (M-1)T is not
/// divisible by m-1.
WindowConfig window_from_embedding(const EmbeddingConfig& cfg, int m);

}  // namespace ordsec
