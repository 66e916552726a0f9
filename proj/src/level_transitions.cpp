#include "ordsec/level_transitions.hpp"

#include <algorithm>
#include <map>

#include "ordsec/errors.hpp"
#include "ordsec/partition_network.hpp"

namespace ordsec {

LevelGranularity parse_granularity(std::string_view name) {
    if (name == "symbol" || name == "per-symbol") return LevelGranularity::per_symbol;
    if (name == "entry" || name == "per-entry") return LevelGranularity::per_entry;
    throw ConfigError("unknown granularity '" + std::string(name) + "' (expected symbol or entry)");
}

std::string_view granularity_name(LevelGranularity g) {
    return g == LevelGranularity::per_symbol ? "symbol" : "entry";
}

std::vector<int> level_sequence(const SymbolSequence& seq, std::span<const PartitionReport> reports,
                                EntropyKind by, LevelGranularity granularity) {
    std::map<OrdinalPattern, int> lookup;
    for (const auto& r : reports) lookup.emplace(r.pattern, r.level(by));

    std::vector<int> out;
    out.reserve(seq.size());
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (granularity == LevelGranularity::per_entry && k > 0 &&
            seq.symbols[k] == seq.symbols[k - 1]) {
            continue;
        }
        const auto it = lookup.find(seq.symbols[k]);
        if (it == lookup.end()) {
            throw NotFoundError("no partition report for pattern " + seq.symbols[k].to_string());
        }
        out.push_back(it->second);
    }
    return out;
}

std::vector<std::size_t> level_sequence_indices(const SymbolSequence& seq,
                                                LevelGranularity granularity) {
    std::vector<std::size_t> out;
    out.reserve(seq.size());
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (granularity == LevelGranularity::per_entry && k > 0 &&
            seq.symbols[k] == seq.symbols[k - 1]) {
            continue;
        }
        out.push_back(seq.start_indices[k]);
    }
    return out;
}

std::uint64_t LevelNetwork::weight(int from, int to) const {
    if (from < 1 || to < 1 || from > levels || to > levels) return 0;
    return weights(static_cast<std::size_t>(from - 1), static_cast<std::size_t>(to - 1));
}

LevelNetwork build_level_network(std::span<const int> level_seq) {
    if (level_seq.size() < 2) throw LengthError("level network needs labels", 2, level_seq.size());
    const int max_level = *std::max_element(level_seq.begin(), level_seq.end());
    if (*std::min_element(level_seq.begin(), level_seq.end()) < 1) {
        throw ConfigError("level labels must be >= 1");
    }
    std::vector<int> zero_based(level_seq.begin(), level_seq.end());
    for (int& v : zero_based) --v;

    LevelNetwork net;
    net.levels = max_level;
    net.weights = count_transitions(zero_based, static_cast<std::size_t>(max_level));
    return net;
}

}  // namespace ordsec
