#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ordsec/embedding.hpp"
#include "ordsec/level_transitions.hpp"
#include "ordsec/ordinal_encoding.hpp"
#include "ordsec/partition_network.hpp"
#include "ordsec/partition_ranking.hpp"
#include "ordsec/return_maps.hpp"
#include "ordsec/time_series.hpp"

// Plot-ready CSV writers. Every file has a header row, patterns are
// dash-joined and reals are printed with 17 significant digits.
namespace ordsec::csv {

std::string format_real(double value);

/// Header "x,dt=<dt>" then one sample per row.
void write_series(std::ostream& out, const TimeSeries& series);
void write_symbols(std::ostream& out, const SymbolSequence& seq);
void write_edges(std::ostream& out, const TransitionCounts& tc, Ranking display);
void write_nodes(std::ostream& out, const TransitionCounts& tc, const MarkovEstimate& est,
                 Ranking display);

/// Rows in lexicographic pattern order.
void write_partitions(std::ostream& out, std::span<const PartitionReport> reports, Ranking display);
/// Partitions sorted descending by h_wt with their h_w alongside.
void write_entropy_curve(std::ostream& out, std::span<const PartitionReport> reports,
                         Ranking display);

/// Columns v_k,v_next,source_tag; `tags` holds one tag per pair or is empty
/// to use the map's own source tag.
void write_frm(std::ostream& out, const ReturnMap& map, std::span<const std::string> tags = {},
               Ranking display = Ranking::chronological, bool header = true);

/// `start_indices` are the sample indices the labels belong to.
void write_level_sequence(std::ostream& out, std::span<const std::size_t> start_indices,
                          std::span<const int> levels);
void write_level_network(std::ostream& out, const LevelNetwork& net);

/// Optional per-point annotation columns for an embedded cloud.
struct CloudColumns {
    std::vector<std::string> pattern;  // empty cell where no window starts
    std::vector<int> level;            // 0 = none
    std::vector<bool> is_entry;
};

void write_embedding(std::ostream& out, const EmbeddedCloud& cloud, const CloudColumns& columns);

}  // namespace ordsec::csv
