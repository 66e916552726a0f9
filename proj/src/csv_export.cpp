#include "ordsec/csv_export.hpp"

#include <charconv>
#include <ostream>

#include "ordsec/errors.hpp"

namespace ordsec::csv {

std::string format_real(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

void write_series(std::ostream& out, const TimeSeries& series) {
    out << "x,dt=" << format_real(series.dt) << '\n';
    for (double v : series.samples) out << format_real(v) << '\n';
}

void write_symbols(std::ostream& out, const SymbolSequence& seq) {
    out << "start_index,pattern\n";
    for (std::size_t k = 0; k < seq.size(); ++k) {
        out << seq.start_indices[k] << ',' << display_pattern(seq.symbols[k], seq.config.ranking)
            << '\n';
    }
}

void write_edges(std::ostream& out, const TransitionCounts& tc, Ranking display) {
    out << "from_pattern,to_pattern,count\n";
    for (std::size_t i = 0; i < tc.node_count(); ++i) {
        for (std::size_t j = 0; j < tc.node_count(); ++j) {
            if (tc.counts(i, j) == 0) continue;
            out << display_pattern(tc.patterns[i], display) << ','
                << display_pattern(tc.patterns[j], display) << ',' << tc.counts(i, j) << '\n';
        }
    }
}

void write_nodes(std::ostream& out, const TransitionCounts& tc, const MarkovEstimate& est,
                 Ranking display) {
    out << "pattern,occupancy\n";
    for (std::size_t i = 0; i < tc.node_count(); ++i) {
        out << display_pattern(tc.patterns[i], display) << ',' << format_real(est.occupancy[i])
            << '\n';
    }
}

namespace {

void partition_row(std::ostream& out, const PartitionReport& r, Ranking display) {
    out << display_pattern(r.pattern, display) << ',' << r.occurrence << ',' << r.entries << ','
        << format_real(r.k) << ',' << format_real(r.k_hat) << ',' << format_real(r.h) << ','
        << format_real(r.h_w) << ',' << format_real(r.h_wt) << ',' << r.level_w << ','
        << r.level_wt << ',' << (r.degenerate ? 1 : 0) << '\n';
}

}  // namespace

void write_partitions(std::ostream& out, std::span<const PartitionReport> reports, Ranking display) {
    out << "pattern,O,O_hat,K,K_hat,h,h_w,h_wt,level_w,level_wt,degenerate\n";
    for (const auto& r : reports) partition_row(out, r, display);
}

void write_entropy_curve(std::ostream& out, std::span<const PartitionReport> reports,
                         Ranking display) {
    const auto ranked = rank_partitions({reports.begin(), reports.end()},
                                        EntropyKind::weighted_transition);
    out << "rank,pattern,h_wt,h_w,level_wt,level_w\n";
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const auto& r = ranked[i];
        out << i + 1 << ',' << display_pattern(r.pattern, display) << ',' << format_real(r.h_wt)
            << ',' << format_real(r.h_w) << ',' << r.level_wt << ',' << r.level_w << '\n';
    }
}

void write_frm(std::ostream& out, const ReturnMap& map, std::span<const std::string> tags,
               Ranking display, bool header) {
    if (!tags.empty() && tags.size() != map.pairs.size()) {
        throw ConfigError("one tag per return-map pair required");
    }
    if (header) out << "v_k,v_next,source_tag\n";
    const std::string own = map.source.tag(display);
    for (std::size_t k = 0; k < map.pairs.size(); ++k) {
        out << format_real(map.pairs[k].first) << ',' << format_real(map.pairs[k].second) << ','
            << (tags.empty() ? own : tags[k]) << '\n';
    }
}

void write_level_sequence(std::ostream& out, std::span<const std::size_t> start_indices,
                          std::span<const int> levels) {
    if (levels.size() != start_indices.size()) throw ConfigError("one level per index required");
    out << "start_index,level\n";
    for (std::size_t k = 0; k < levels.size(); ++k) {
        out << start_indices[k] << ',' << levels[k] << '\n';
    }
}

void write_level_network(std::ostream& out, const LevelNetwork& net) {
    out << "from_level,to_level,weight\n";
    for (int a = 1; a <= net.levels; ++a) {
        for (int b = 1; b <= net.levels; ++b) {
            out << a << ',' << b << ',' << net.weight(a, b) << '\n';
        }
    }
}

void write_embedding(std::ostream& out, const EmbeddedCloud& cloud, const CloudColumns& columns) {
    const std::size_t n = cloud.size();
    const bool with_pattern = !columns.pattern.empty();
    const bool with_level = !columns.level.empty();
    const bool with_entry = !columns.is_entry.empty();
    if ((with_pattern && columns.pattern.size() != n) || (with_level && columns.level.size() != n) ||
        (with_entry && columns.is_entry.size() != n)) {
        throw ConfigError("annotation columns must have one entry per embedded point");
    }
    for (int j = 0; j < cloud.dim; ++j) out << (j ? "," : "") << 'x' << j;
    if (with_pattern) out << ",pattern";
    if (with_level) out << ",level";
    if (with_entry) out << ",is_entry";
    out << '\n';
    for (std::size_t k = 0; k < n; ++k) {
        const auto p = cloud.point(k);
        for (int j = 0; j < cloud.dim; ++j) out << (j ? "," : "") << format_real(p[j]);
        if (with_pattern) out << ',' << columns.pattern[k];
        if (with_level) {
            out << ',';
            if (columns.level[k] > 0) out << columns.level[k];
        }
        if (with_entry) out << ',' << (columns.is_entry[k] ? 1 : 0);
        out << '\n';
    }
}

}  // namespace ordsec::csv
