#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ordsec/ordinal_encoding.hpp"
#include "ordsec/partition_ranking.hpp"
#include "ordsec/square_matrix.hpp"

namespace ordsec {

/// What one element of the level sequence stands for: every symbol, or
/// every entry event (runs of one pattern collapsed).
enum class LevelGranularity { per_symbol, per_entry };

LevelGranularity parse_granularity(std::string_view name);
std::string_view granularity_name(LevelGranularity g);

/// Level label of each symbol. Throws NotFoundError naming the first pattern
/// without a report.
std::vector<int> level_sequence(const SymbolSequence& seq, std::span<const PartitionReport> reports,
                                EntropyKind by,
                                LevelGranularity granularity = LevelGranularity::per_symbol);

/// Sample indices the labels of level_sequence(..., granularity) refer to.
std::vector<std::size_t> level_sequence_indices(const SymbolSequence& seq,
                                                LevelGranularity granularity);

/// Weighted directed network over levels 1..levels. weights(a-1, b-1) counts
/// consecutive a -> b steps, self-loops included.
struct LevelNetwork {
    int levels = 0;
    SquareMatrix<std::uint64_t> weights;

    std::uint64_t weight(int from, int to) const;
    std::uint64_t total() const { return weights.total(); }
};

LevelNetwork build_level_network(std::span<const int> level_seq);

}  // namespace ordsec
