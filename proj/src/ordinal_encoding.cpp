#include "ordsec/ordinal_encoding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>

#include "ordsec/errors.hpp"

namespace ordsec {

Ranking parse_ranking(std::string_view name) {
    if (name == "amplitude") return Ranking::amplitude;
    if (name == "chronological") return Ranking::chronological;
    throw ConfigError("unknown ranking '" + std::string(name) +
                      "' (expected amplitude or chronological)");
}

std::string_view ranking_name(Ranking ranking) {
    return ranking == Ranking::amplitude ? "amplitude" : "chronological";
}

std::size_t WindowConfig::window_count(std::size_t n) const noexcept {
    const std::size_t span = static_cast<std::size_t>(length());
    if (n < span + 1 || w < 1) return 0;
    return (n - span - 1) / static_cast<std::size_t>(w) + 1;
}

void WindowConfig::validate() const {
    if (m < 2) throw ConfigError("window needs m >= 2 points, got " + std::to_string(m));
    if (m > 20) throw ConfigError("window size m = " + std::to_string(m) + " is too large");
    if (tau < 1) throw ConfigError("tau must be >= 1, got " + std::to_string(tau));
    if (w < 1) throw ConfigError("window slide w must be >= 1, got " + std::to_string(w));
}

OrdinalPattern::OrdinalPattern(std::vector<int> perm) : perm_(std::move(perm)) {
    const int m = size();
    std::vector<bool> seen(static_cast<std::size_t>(m), false);
    for (int v : perm_) {
        if (v < 1 || v > m || seen[static_cast<std::size_t>(v - 1)]) {
            throw ConfigError("'" + to_string() + "' is not a permutation of 1.." +
                              std::to_string(m));
        }
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
}

OrdinalPattern OrdinalPattern::parse(std::string_view text) {
    std::vector<int> perm;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto pos = std::min(text.find('-', start), text.size());
        const auto token = text.substr(start, pos - start);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
            throw ConfigError("cannot parse pattern '" + std::string(text) + "'");
        }
        perm.push_back(value);
        start = pos + 1;
    }
    return OrdinalPattern(std::move(perm));
}

OrdinalPattern OrdinalPattern::identity(int m) {
    std::vector<int> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 1);
    return OrdinalPattern(std::move(perm));
}

OrdinalPattern OrdinalPattern::inverse() const {
    std::vector<int> inv(perm_.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) {
        inv[static_cast<std::size_t>(perm_[i] - 1)] = static_cast<int>(i) + 1;
    }
    return OrdinalPattern(std::move(inv));
}

std::string OrdinalPattern::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < perm_.size(); ++i) {
        if (i) out += '-';
        out += std::to_string(perm_[i]);
    }
    return out;
}

std::size_t OrdinalPatternHash::operator()(const OrdinalPattern& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int v : p.perm()) {
        h ^= static_cast<std::size_t>(v);
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

// Positions (0-based) sorted ascending by value, ties by position.
void ascending_order(std::span<const double> values, std::vector<int>& order) {
    order.resize(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return values[a] < values[b]; });
}

}  // namespace

OrdinalPattern pattern_of_window(std::span<const double> values, Ranking ranking) {
    for (double v : values) {
        if (!std::isfinite(v)) throw ConfigError("non-finite value in ordinal window");
    }
    std::vector<int> order;
    ascending_order(values, order);
    std::vector<int> chrono(order.size());
    std::transform(order.begin(), order.end(), chrono.begin(), [](int i) { return i + 1; });
    OrdinalPattern pattern(std::move(chrono));
    return ranking == Ranking::chronological ? pattern : chronological_to_amplitude(pattern);
}

OrdinalPattern chronological_to_amplitude(const OrdinalPattern& chrono) {
    // chrono[r] is the position holding the (r+1)-th smallest value; that
    // position's amplitude rank is m - r.
    const int m = chrono.size();
    std::vector<int> amp(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) {
        amp[static_cast<std::size_t>(chrono.perm()[static_cast<std::size_t>(r)] - 1)] = m - r;
    }
    return OrdinalPattern(std::move(amp));
}

OrdinalPattern amplitude_to_chronological(const OrdinalPattern& amplitude) {
    const int m = amplitude.size();
    std::vector<int> chrono(static_cast<std::size_t>(m));
    for (int pos = 0; pos < m; ++pos) {
        chrono[static_cast<std::size_t>(m - amplitude.perm()[static_cast<std::size_t>(pos)])] =
            pos + 1;
    }
    return OrdinalPattern(std::move(chrono));
}

std::string display_pattern(const OrdinalPattern& chrono, Ranking ranking) {
    return ranking == Ranking::chronological ? chrono.to_string()
                                             : chronological_to_amplitude(chrono).to_string();
}

SymbolSequence symbolize(std::span<const double> samples, const WindowConfig& cfg) {
    cfg.validate();
    const std::size_t n = samples.size();
    if (n < cfg.min_series_length()) {
        throw LengthError("series too short for window (m=" + std::to_string(cfg.m) +
                              ", tau=" + std::to_string(cfg.tau) + ")",
                          cfg.min_series_length(), n);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(samples[i])) {
            throw ConfigError("non-finite sample at index " + std::to_string(i));
        }
    }
    const std::size_t count = cfg.window_count(n);
    const auto m = static_cast<std::size_t>(cfg.m);
    const auto tau = static_cast<std::size_t>(cfg.tau);

    SymbolSequence seq;
    seq.source_len = n;
    seq.config = cfg;
    seq.symbols.reserve(count);
    seq.start_indices.reserve(count);

    std::vector<double> window(m);
    std::vector<int> order;
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t start = k * static_cast<std::size_t>(cfg.w);
        for (std::size_t j = 0; j < m; ++j) window[j] = samples[start + j * tau];
        ascending_order(window, order);
        std::vector<int> chrono(m);
        for (std::size_t j = 0; j < m; ++j) chrono[j] = order[j] + 1;
        seq.symbols.emplace_back(std::move(chrono));
        seq.start_indices.push_back(start);
    }
    return seq;
}

SymbolSequence symbolize(const TimeSeries& series, const WindowConfig& cfg) {
    return symbolize(series.view(), cfg);
}

std::vector<std::pair<OrdinalPattern, std::size_t>> distinct_patterns(const SymbolSequence& seq) {
    std::map<OrdinalPattern, std::size_t> counts;
    for (const auto& s : seq.symbols) ++counts[s];
    return {counts.begin(), counts.end()};
}

}  // namespace ordsec
