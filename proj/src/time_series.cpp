#include "ordsec/time_series.hpp"

#include <cmath>
#include <string>

#include "ordsec/errors.hpp"

namespace ordsec {

void TimeSeries::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ConfigError("sample interval must be positive and finite");
    }
    if (samples.size() < 2) {
        throw LengthError("time series too short", 2, samples.size());
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i])) {
            throw ConfigError("non-finite sample at index " + std::to_string(i));
        }
    }
}

}  // namespace ordsec
