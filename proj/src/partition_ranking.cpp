#include "ordsec/partition_ranking.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ordsec/errors.hpp"
#include "ordsec/partition_network.hpp"

namespace ordsec {

WindowConfig SubSeriesConfig::window() const {
    WindowConfig cfg;
    cfg.m = m_prime;
    cfg.tau = tau_prime;
    cfg.w = w_prime;
    cfg.ranking = Ranking::chronological;
    return cfg;
}

std::size_t SubSeriesConfig::min_length() const {
    return static_cast<std::size_t>((m_prime - 1) * tau_prime) + 1 +
           static_cast<std::size_t>(w_prime);
}

CorpusCounts CorpusCounts::from(const SymbolSequence& seq) {
    CorpusCounts c;
    c.total_windows = seq.size();
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (k == 0 || seq.symbols[k] != seq.symbols[k - 1]) ++c.total_entries;
    }
    return c;
}

EntropyKind parse_entropy_kind(std::string_view name) {
    if (name == "h_w" || name == "weighted") return EntropyKind::weighted;
    if (name == "h_wt" || name == "weighted-transition" || name == "weighted_transition") {
        return EntropyKind::weighted_transition;
    }
    throw ConfigError("unknown entropy '" + std::string(name) + "' (expected h_w or h_wt)");
}

std::string_view entropy_kind_name(EntropyKind kind) {
    return kind == EntropyKind::weighted ? "h_w" : "h_wt";
}

namespace {

std::vector<std::size_t> positions_of(const SymbolSequence& seq, const OrdinalPattern& pattern) {
    std::vector<std::size_t> pos;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (seq.symbols[k] == pattern) pos.push_back(k);
    }
    if (pos.empty()) {
        throw NotFoundError("pattern " + pattern.to_string() + " does not occur in the sequence");
    }
    return pos;
}

// `positions` are the symbol positions carrying `pattern`, ascending.
PartitionReport report_from_positions(const TimeSeries& series, const SymbolSequence& seq,
                                      const OrdinalPattern& pattern,
                                      std::span<const std::size_t> positions,
                                      const SubSeriesConfig& sub_cfg, const CorpusCounts& corpus) {
    PartitionReport r;
    r.pattern = pattern;
    r.occurrence = positions.size();

    std::vector<double> sub;
    sub.reserve(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const std::size_t k = positions[i];
        sub.push_back(series.samples[seq.start_indices[k]]);
        // A run continues only if the previous symbol is the same pattern.
        if (i == 0 || positions[i - 1] + 1 != k) r.entry_indices.push_back(seq.start_indices[k]);
    }
    r.entries = r.entry_indices.size();
    r.k = static_cast<double>(r.occurrence) / static_cast<double>(corpus.total_windows);
    r.k_hat = corpus.total_entries == 0
                  ? 0.0
                  : static_cast<double>(r.entries) / static_cast<double>(corpus.total_entries);

    if (sub.size() < sub_cfg.min_length()) {
        r.degenerate = true;
        return r;
    }
    const MarkovEstimate est = markov_estimate(build_opn(symbolize(sub, sub_cfg.window())));
    r.h = permutation_entropy(est);
    r.h_w = scaled_entropy(est.occupancy, r.k);
    r.h_wt = scaled_entropy(est.occupancy, r.k_hat);
    return r;
}

}  // namespace

TimeSeries extract_subseries(const TimeSeries& series, const SymbolSequence& seq,
                             const OrdinalPattern& pattern) {
    const auto pos = positions_of(seq, pattern);
    TimeSeries out;
    out.dt = series.dt;
    out.origin_time = series.origin_time;
    out.samples.reserve(pos.size());
    for (std::size_t k : pos) out.samples.push_back(series.samples[seq.start_indices[k]]);
    return out;
}

std::vector<std::size_t> entry_points(const SymbolSequence& seq, const OrdinalPattern& pattern) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (seq.symbols[k] == pattern && (k == 0 || seq.symbols[k - 1] != pattern)) {
            out.push_back(seq.start_indices[k]);
        }
    }
    return out;
}

double scaled_entropy(std::span<const double> occupancy, double scale) {
    if (!(scale > 0.0)) return 0.0;
    const double log_scale = std::log2(scale);
    double h = 0.0;
    for (double p : occupancy) {
        if (p > 0.0) h -= scale * p * (std::log2(p) + log_scale);
    }
    return h;
}

PartitionReport weighted_entropies(const TimeSeries& series, const SymbolSequence& seq,
                                   const OrdinalPattern& pattern, const SubSeriesConfig& sub_cfg,
                                   const CorpusCounts& corpus) {
    const auto pos = positions_of(seq, pattern);
    return report_from_positions(series, seq, pattern, pos, sub_cfg, corpus);
}

std::vector<PartitionReport> rank_partitions(std::vector<PartitionReport> reports, EntropyKind by) {
    std::stable_sort(reports.begin(), reports.end(),
                     [by](const PartitionReport& a, const PartitionReport& b) {
                         const double ea = a.entropy(by);
                         const double eb = b.entropy(by);
                         if (ea != eb) return ea > eb;
                         return a.pattern < b.pattern;
                     });
    return reports;
}

std::vector<int> detect_levels(std::span<const double> sorted_desc, const LevelConfig& cfg) {
    if (sorted_desc.empty()) throw ConfigError("level detection needs at least one value");
    if (!(cfg.gap_fraction > 0.0 && cfg.gap_fraction < 1.0)) {
        throw ConfigError("gap_fraction must lie in (0, 1)");
    }
    if (cfg.max_levels < 1) throw ConfigError("max_levels must be >= 1");
    for (std::size_t i = 1; i < sorted_desc.size(); ++i) {
        if (sorted_desc[i] > sorted_desc[i - 1]) {
            throw ConfigError("level detection expects values sorted in descending order");
        }
    }

    const std::size_t n = sorted_desc.size();
    std::vector<int> labels(n, 1);
    const double range = sorted_desc.front() - sorted_desc.back();
    if (n < 2 || !(range > 0.0)) return labels;

    const double threshold = cfg.gap_fraction * range;
    std::vector<std::size_t> candidates;  // gap k lies between k and k + 1
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sorted_desc[k] - sorted_desc[k + 1] > threshold) candidates.push_back(k);
    }
    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
        return sorted_desc[a] - sorted_desc[a + 1] > sorted_desc[b] - sorted_desc[b + 1];
    });
    const std::size_t splits =
        std::min(candidates.size(), static_cast<std::size_t>(cfg.max_levels - 1));
    candidates.resize(splits);
    std::sort(candidates.begin(), candidates.end());

    int level = 1;
    std::size_t next_split = 0;
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = level;
        if (next_split < candidates.size() && candidates[next_split] == i) {
            ++level;
            ++next_split;
        }
    }
    return labels;
}

void assign_levels(std::vector<PartitionReport>& reports, const LevelConfig& cfg) {
    if (reports.empty()) return;
    for (EntropyKind kind : {EntropyKind::weighted, EntropyKind::weighted_transition}) {
        std::vector<std::size_t> order(reports.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double ea = reports[a].entropy(kind);
            const double eb = reports[b].entropy(kind);
            if (ea != eb) return ea > eb;
            return reports[a].pattern < reports[b].pattern;
        });
        std::vector<double> sorted;
        sorted.reserve(order.size());
        for (std::size_t i : order) sorted.push_back(reports[i].entropy(kind));
        const auto labels = detect_levels(sorted, cfg);
        for (std::size_t r = 0; r < order.size(); ++r) {
            auto& report = reports[order[r]];
            (kind == EntropyKind::weighted ? report.level_w : report.level_wt) = labels[r];
        }
    }
}

std::vector<PartitionReport> analyze_partitions(const TimeSeries& series, const SymbolSequence& seq,
                                                const SubSeriesConfig& sub_cfg,
                                                const LevelConfig& level_cfg) {
    if (seq.size() == 0) throw LengthError("no symbols to analyze", 1, 0);
    if (series.size() != seq.source_len) {
        throw ConfigError("symbol sequence was built from a different series");
    }
    std::map<OrdinalPattern, std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < seq.size(); ++k) groups[seq.symbols[k]].push_back(k);

    const CorpusCounts corpus = CorpusCounts::from(seq);
    std::vector<PartitionReport> reports;
    reports.reserve(groups.size());
    for (const auto& [pattern, positions] : groups) {
        reports.push_back(report_from_positions(series, seq, pattern, positions, sub_cfg, corpus));
    }
    assign_levels(reports, level_cfg);
    return reports;
}

}  // namespace ordsec
