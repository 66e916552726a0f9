#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ordsec/ordinal_encoding.hpp"
#include "ordsec/time_series.hpp"

namespace ordsec {

/// Inner window used to measure the entropy of a partition's sub-series.
struct SubSeriesConfig {
    int m_prime = 3;
    int tau_prime = 1;
    int w_prime = 1;

    WindowConfig window() const;
    /// Shortest sub-series that still yields two inner symbols.
    std::size_t min_length() const;
};

/// Corpus-wide denominators: number of windows and number of entry events
/// summed over all partitions.
struct CorpusCounts {
    std::size_t total_windows = 0;
    std::size_t total_entries = 0;

    static CorpusCounts from(const SymbolSequence& seq);
};

enum class EntropyKind { weighted, weighted_transition };

EntropyKind parse_entropy_kind(std::string_view name);
std::string_view entropy_kind_name(EntropyKind kind);

struct PartitionReport {
    OrdinalPattern pattern;
    std::size_t occurrence = 0;  ///< windows carrying the pattern
    std::size_t entries = 0;     ///< maximal runs of the pattern
    double k = 0.0;              ///< occurrence / total_windows
    double k_hat = 0.0;          ///< entries / total_entries
    double h = 0.0;              ///< sub-series permutation entropy, bits
    double h_w = 0.0;
    double h_wt = 0.0;
    int level_w = 1;
    int level_wt = 1;
    std::vector<std::size_t> entry_indices;
    bool degenerate = false;

    double entropy(EntropyKind kind) const noexcept {
        return kind == EntropyKind::weighted ? h_w : h_wt;
    }
    int level(EntropyKind kind) const noexcept {
        return kind == EntropyKind::weighted ? level_w : level_wt;
    }
};

/// Samples at the window-start index of every symbol equal to `pattern`, in
/// temporal order. Throws NotFoundError when the pattern never occurs.
TimeSeries extract_subseries(const TimeSeries& series, const SymbolSequence& seq,
                             const OrdinalPattern& pattern);

/// Start indices of symbols that begin a run of `pattern` (position 0 counts).
std::vector<std::size_t> entry_points(const SymbolSequence& seq, const OrdinalPattern& pattern);

/// -sum_i scale * p_i * (log2 p_i + log2 scale), with 0 log 0 = 0.
double scaled_entropy(std::span<const double> occupancy, double scale);

PartitionReport weighted_entropies(const TimeSeries& series, const SymbolSequence& seq,
                                   const OrdinalPattern& pattern, const SubSeriesConfig& sub_cfg,
                                   const CorpusCounts& corpus);

/// Stable descending sort by the chosen entropy; ties go to the
/// lexicographically smaller pattern first.
std::vector<PartitionReport> rank_partitions(std::vector<PartitionReport> reports,
                                             EntropyKind by);

struct LevelConfig {
    double gap_fraction = 0.15;
    int max_levels = 3;
};

/// Splits a descending list at up to max_levels - 1 of its largest
/// consecutive gaps, counting only gaps larger than gap_fraction * range.
/// Labels start at 1 for the highest values.
std::vector<int> detect_levels(std::span<const double> sorted_desc, const LevelConfig& cfg = {});

/// Reports for every occurring pattern (lexicographic order) with both level
/// labellings filled in.
std::vector<PartitionReport> analyze_partitions(const TimeSeries& series, const SymbolSequence& seq,
                                                const SubSeriesConfig& sub_cfg = {},
                                                const LevelConfig& level_cfg = {});

/// Recomputes level_w and level_wt in place.
void assign_levels(std::vector<PartitionReport>& reports, const LevelConfig& cfg);

}  // namespace ordsec
