#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ordsec {

/// Uniformly sampled scalar series.
struct TimeSeries {
    std::vector<double> samples;
    double dt = 1.0;
    double origin_time = 0.0;

    std::size_t size() const noexcept { return samples.size(); }
    std::span<const double> view() const noexcept { return samples; }

    /// Throws ConfigError / LengthError unless dt > 0, at least two samples,
    /// and every sample is finite.
    void validate() const;
};

}  // namespace ordsec
