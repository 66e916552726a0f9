#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordsec/time_series.hpp"

namespace ordsec {

enum class Ranking { amplitude, chronological };

Ranking parse_ranking(std::string_view name);
std::string_view ranking_name(Ranking ranking);

/// Sliding window of m points spaced tau apart, advanced by w samples.
struct WindowConfig {
    int m = 4;
    int tau = 6;
    int w = 1;
    Ranking ranking = Ranking::chronological;

    /// Span in samples from first to last selected point, (m - 1) * tau.
    int length() const noexcept { return (m - 1) * tau; }
    std::size_t min_series_length() const noexcept {
        return static_cast<std::size_t>(length()) + 1;
    }
    /// floor((N - (m-1)tau - 1)/w + 1), or 0 when N is too short.
    std::size_t window_count(std::size_t n) const noexcept;
    void validate() const;
};

/// A permutation of {1..m}. Ordering is lexicographic on the vector.
class OrdinalPattern {
public:
    OrdinalPattern() = default;
    /// Throws ConfigError unless `perm` is a permutation of 1..size.
    explicit OrdinalPattern(std::vector<int> perm);

    /// Parses the dash-joined form, e.g. "4-3-2-1".
    static OrdinalPattern parse(std::string_view text);
    static OrdinalPattern identity(int m);

    const std::vector<int>& perm() const noexcept { return perm_; }
    int size() const noexcept { return static_cast<int>(perm_.size()); }

    OrdinalPattern inverse() const;
    std::string to_string() const;

    auto operator<=>(const OrdinalPattern&) const = default;
    bool operator==(const OrdinalPattern&) const = default;

private:
    std::vector<int> perm_;
};

struct OrdinalPatternHash {
    std::size_t operator()(const OrdinalPattern& p) const noexcept;
};

/// Amplitude ranking gives rank 1 to the largest value; chronological ranking
/// lists 1-based positions in ascending amplitude order. Equal values compare
/// by position (earlier is smaller). Throws ConfigError on non-finite input.
OrdinalPattern pattern_of_window(std::span<const double> values, Ranking ranking);

/// Converts between the two schemes for the same window.
OrdinalPattern chronological_to_amplitude(const OrdinalPattern& chrono);
OrdinalPattern amplitude_to_chronological(const OrdinalPattern& amplitude);

/// Renders a chronologically stored pattern in the requested scheme.
std::string display_pattern(const OrdinalPattern& chrono, Ranking ranking);

/// Symbols are always stored in chronological form; `config.ranking` only
/// affects how they are displayed. Symbol k belongs to the window starting at
/// `start_indices[k]`.
struct SymbolSequence {
    std::vector<OrdinalPattern> symbols;
    std::vector<std::size_t> start_indices;
    std::size_t source_len = 0;
    WindowConfig config;

    std::size_t size() const noexcept { return symbols.size(); }
};

SymbolSequence symbolize(std::span<const double> samples, const WindowConfig& cfg);
SymbolSequence symbolize(const TimeSeries& series, const WindowConfig& cfg);

/// Occurring patterns with occurrence counts, lexicographically ordered.
std::vector<std::pair<OrdinalPattern, std::size_t>> distinct_patterns(const SymbolSequence& seq);

}  // namespace ordsec
