#include "ordsec/return_maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ordsec/errors.hpp"

namespace ordsec {

std::string MapSource::tag(Ranking display) const {
    switch (kind) {
        case Kind::partition: return "partition:" + display_pattern(pattern, display);
        case Kind::maxima: return "maxima";
        case Kind::entries: break;
    }
    return "entries";
}

ReturnMap frm_from_entries(const TimeSeries& series, std::span<const std::size_t> entry_indices,
                           MapSource source) {
    if (entry_indices.size() < 2) {
        throw LengthError("first return map needs section points", 2, entry_indices.size());
    }
    for (std::size_t k = 0; k < entry_indices.size(); ++k) {
        if (entry_indices[k] >= series.size()) {
            throw ConfigError("entry index " + std::to_string(entry_indices[k]) +
                              " outside series of length " + std::to_string(series.size()));
        }
        if (k > 0 && entry_indices[k] <= entry_indices[k - 1]) {
            throw ConfigError("entry indices must be strictly ascending");
        }
    }
    ReturnMap map;
    map.source = std::move(source);
    map.entry_indices.assign(entry_indices.begin(), entry_indices.end());
    map.pairs.reserve(entry_indices.size() - 1);
    for (std::size_t k = 0; k + 1 < entry_indices.size(); ++k) {
        map.pairs.emplace_back(series.samples[entry_indices[k]],
                               series.samples[entry_indices[k + 1]]);
    }
    return map;
}

std::vector<std::size_t> local_maxima_indices(const TimeSeries& series) {
    const auto& x = series.samples;
    std::vector<std::size_t> out;
    if (x.size() < 3) return out;
    std::size_t i = 1;
    while (i + 1 < x.size()) {
        if (x[i - 1] < x[i]) {
            std::size_t j = i;
            while (j + 1 < x.size() && x[j + 1] == x[i]) ++j;
            if (j + 1 < x.size() && x[j + 1] < x[i]) out.push_back(i);
            i = j + 1;
        } else {
            ++i;
        }
    }
    return out;
}

std::vector<std::string> MaximaFrm::pair_tags() const {
    std::vector<std::string> tags;
    tags.reserve(combined.pairs.size());
    for (std::size_t k = 0; k < combined.pairs.size(); ++k) {
        if (classes.empty()) {
            tags.emplace_back("maxima");
        } else {
            tags.emplace_back(classes[k] == SignClass::positive ? "maxima:+" : "maxima:-");
        }
    }
    return tags;
}

ReturnMap MaximaFrm::for_class(SignClass cls) const {
    ReturnMap map;
    map.source = combined.source;
    std::vector<double> values;
    for (std::size_t k = 0; k < classes.size(); ++k) {
        if (classes[k] != cls) continue;
        map.entry_indices.push_back(combined.entry_indices[k]);
        values.push_back(k < combined.pairs.size() ? combined.pairs[k].first
                                                   : combined.pairs.back().second);
    }
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        map.pairs.emplace_back(values[k], values[k + 1]);
    }
    return map;
}

MaximaFrm maxima_frm(const TimeSeries& series, bool sign_split) {
    const auto maxima = local_maxima_indices(series);
    if (maxima.size() < 3) throw LengthError("maxima return map needs local maxima", 3, maxima.size());
    MaximaFrm out;
    out.combined = frm_from_entries(series, maxima, MapSource::of_maxima());
    if (sign_split) {
        out.classes.reserve(maxima.size());
        for (std::size_t idx : maxima) {
            out.classes.push_back(series.samples[idx] < 0.0 ? SignClass::negative
                                                            : SignClass::positive);
        }
    }
    return out;
}

DiagonalSplit diagonal_split(const ReturnMap& map, Diagonal diagonal) {
    DiagonalSplit s;
    for (const auto& [first, next] : map.pairs) {
        const double v = diagonal == Diagonal::identity ? first : -first;
        if (next > v) {
            ++s.above;
        } else if (next < v) {
            ++s.below;
        } else {
            ++s.on;
        }
    }
    return s;
}

double mean_nearest_distance(const ReturnMap& from, const ReturnMap& to) {
    if (from.pairs.empty() || to.pairs.empty()) {
        throw LengthError("nearest-neighbour distance needs points", 1, 0);
    }
    // Sorting `to` by first coordinate lets the scan stop once the
    // horizontal offset alone exceeds the best distance.
    auto sorted = to.pairs;
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0;
    for (const auto& [px, py] : from.pairs) {
        const auto start = std::lower_bound(sorted.begin(), sorted.end(),
                                            std::pair<double, double>(px, -std::numeric_limits<double>::infinity()));
        double best = std::numeric_limits<double>::infinity();
        for (auto it = start; it != sorted.end(); ++it) {
            const double dx = it->first - px;
            if (dx * dx >= best) break;
            best = std::min(best, dx * dx + (it->second - py) * (it->second - py));
        }
        for (auto it = start; it != sorted.begin();) {
            --it;
            const double dx = px - it->first;
            if (dx * dx >= best) break;
            best = std::min(best, dx * dx + (it->second - py) * (it->second - py));
        }
        sum += std::sqrt(best);
    }
    return sum / static_cast<double>(from.pairs.size());
}

double bounding_box_diagonal(const ReturnMap& map) {
    if (map.pairs.empty()) return 0.0;
    double x0 = map.pairs[0].first, x1 = x0, y0 = map.pairs[0].second, y1 = y0;
    for (const auto& [x, y] : map.pairs) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
    return std::hypot(x1 - x0, y1 - y0);
}

}  // namespace ordsec
