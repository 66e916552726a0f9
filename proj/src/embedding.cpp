#include "ordsec/embedding.hpp"

#include <cstdlib>

#include "ordsec/errors.hpp"

namespace ordsec {

void EmbeddingConfig::validate() const {
    if (dim < 2) throw ConfigError("embedding dimension must be >= 2, got " + std::to_string(dim));
    if (lag < 1) throw ConfigError("embedding lag must be >= 1, got " + std::to_string(lag));
}

EmbeddingConfig EmbeddingConfig::for_system(System system) {
    switch (system) {
        case System::lorenz: return {3, 9};
        case System::rossler: return {3, 144};
        case System::mackey_glass: return {2, 204};
    }
    return {};
}

EmbeddedCloud delay_embed(const TimeSeries& series, const EmbeddingConfig& cfg) {
    cfg.validate();
    const auto span = static_cast<std::size_t>((cfg.dim - 1) * cfg.lag);
    const std::size_t n = series.size();
    if (n < span + 1) throw LengthError("series too short for delay embedding", span + 1, n);

    EmbeddedCloud cloud;
    cloud.dim = cfg.dim;
    const std::size_t count = n - span;
    cloud.coords.reserve(count * static_cast<std::size_t>(cfg.dim));
    for (std::size_t k = 0; k < count; ++k) {
        for (int j = 0; j < cfg.dim; ++j) {
            cloud.coords.push_back(series.samples[k + static_cast<std::size_t>(j * cfg.lag)]);
        }
    }
    return cloud;
}

WindowConfig window_from_embedding(const EmbeddingConfig& cfg, int m) {
    cfg.validate();
    if (m < 2) throw ConfigError("window needs m >= 2 points, got " + std::to_string(m));
    const int length = (cfg.dim - 1) * cfg.lag;
    if (length % (m - 1) != 0) {
        int best = 2;
        for (int cand = 2; cand <= length + 1; ++cand) {
            if (length % (cand - 1) != 0) continue;
            if (std::abs(cand - m) < std::abs(best - m)) best = cand;
        }
        throw ConfigError("window length " + std::to_string(length) + " is not divisible by m-1 = " +
                          std::to_string(m - 1) + "; nearest valid m is " + std::to_string(best));
    }
    WindowConfig out;
    out.m = m;
    out.tau = length / (m - 1);
    out.w = 1;
    return out;
}

}  // namespace ordsec
