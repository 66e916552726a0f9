#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ordsec/ordinal_encoding.hpp"
#include "ordsec/square_matrix.hpp"

namespace ordsec {

/// Ordinal partition network: nodes are occurring patterns (lexicographic),
/// counts(i, j) is the number of consecutive symbol pairs i -> j.
struct TransitionCounts {
    std::vector<OrdinalPattern> patterns;
    SquareMatrix<std::uint64_t> counts;

    std::size_t node_count() const noexcept { return patterns.size(); }
    std::optional<std::size_t> index_of(const OrdinalPattern& pattern) const;
    std::uint64_t total() const { return counts.total(); }
};

struct MarkovEstimate {
    SquareMatrix<double> row_stochastic;
    std::vector<double> occupancy;
    /// Rows with no outgoing transitions; their row_stochastic row is zero.
    std::vector<bool> zero_row;
};

/// Counts transitions between integer labels in [0, n_labels).
SquareMatrix<std::uint64_t> count_transitions(std::span<const int> labels, std::size_t n_labels);

TransitionCounts build_opn(const SymbolSequence& seq);

/// p_ij = a_ij / sum_k a_ik and p_i = sum_j a_ij / sum_kj a_kj.
MarkovEstimate markov_estimate(const TransitionCounts& tc);

/// Shannon entropy in bits with 0 log 0 = 0.
double shannon_entropy_bits(std::span<const double> probabilities);

/// Permutation entropy (bits) of the occupancy distribution.
double permutation_entropy(const MarkovEstimate& est);

/// build_opn -> markov_estimate -> permutation_entropy in one call.
double permutation_entropy(const SymbolSequence& seq);

}  // namespace ordsec
