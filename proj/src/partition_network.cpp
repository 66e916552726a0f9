#include "ordsec/partition_network.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ordsec/errors.hpp"

namespace ordsec {

std::optional<std::size_t> TransitionCounts::index_of(const OrdinalPattern& pattern) const {
    const auto it = std::lower_bound(patterns.begin(), patterns.end(), pattern);
    if (it == patterns.end() || *it != pattern) return std::nullopt;
    return static_cast<std::size_t>(it - patterns.begin());
}

SquareMatrix<std::uint64_t> count_transitions(std::span<const int> labels, std::size_t n_labels) {
    SquareMatrix<std::uint64_t> counts(n_labels);
    for (std::size_t k = 1; k < labels.size(); ++k) {
        ++counts(static_cast<std::size_t>(labels[k - 1]), static_cast<std::size_t>(labels[k]));
    }
    return counts;
}

TransitionCounts build_opn(const SymbolSequence& seq) {
    if (seq.size() < 2) throw LengthError("ordinal partition network needs symbols", 2, seq.size());

    std::map<OrdinalPattern, int> ids;
    for (const auto& s : seq.symbols) ids.emplace(s, 0);
    TransitionCounts tc;
    tc.patterns.reserve(ids.size());
    int next = 0;
    for (auto& [pattern, id] : ids) {
        id = next++;
        tc.patterns.push_back(pattern);
    }
    std::vector<int> labels;
    labels.reserve(seq.size());
    for (const auto& s : seq.symbols) labels.push_back(ids.find(s)->second);
    tc.counts = count_transitions(labels, tc.patterns.size());
    return tc;
}

MarkovEstimate markov_estimate(const TransitionCounts& tc) {
    const std::size_t n = tc.node_count();
    const std::uint64_t total = tc.total();
    if (n == 0 || total == 0) throw ConfigError("empty transition network");

    MarkovEstimate est;
    est.row_stochastic = SquareMatrix<double>(n, 0.0);
    est.occupancy.assign(n, 0.0);
    est.zero_row.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t row = tc.counts.row_sum(i);
        est.occupancy[i] = static_cast<double>(row) / static_cast<double>(total);
        if (row == 0) {
            est.zero_row[i] = true;
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            est.row_stochastic(i, j) =
                static_cast<double>(tc.counts(i, j)) / static_cast<double>(row);
        }
    }
    return est;
}

double shannon_entropy_bits(std::span<const double> probabilities) {
    double h = 0.0;
    for (double p : probabilities) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

double permutation_entropy(const MarkovEstimate& est) {
    return shannon_entropy_bits(est.occupancy);
}

double permutation_entropy(const SymbolSequence& seq) {
    return permutation_entropy(markov_estimate(build_opn(seq)));
}

}  // namespace ordsec
