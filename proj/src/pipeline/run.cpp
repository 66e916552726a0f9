#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <system_error>

#include "ordsec/csv_export.hpp"
#include "ordsec/errors.hpp"
#include "ordsec/partition_network.hpp"
#include "ordsec/pipeline.hpp"
#include "ordsec/return_maps.hpp"

namespace ordsec::pipeline {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

TimeSeries generate_series(const SystemOptions& opts) {
    switch (opts.system) {
        case System::lorenz: return integrate_lorenz(opts.lorenz, opts.sim);
        case System::rossler: return integrate_rossler(opts.rossler, opts.sim);
        case System::mackey_glass: return integrate_mackey_glass(opts.mackey_glass, opts.sim);
    }
    throw ConfigError("unknown system");
}

namespace {

// Output files collected in memory and written only once every step succeeded.
class Stage {
public:
    void add(const std::string& name, const std::string& content) { open(name) << content; }
    std::ostringstream& open(const std::string& name) {
        auto [it, inserted] = files_.try_emplace(name);
        if (inserted) names_.push_back(name);
        return it->second;
    }

    std::vector<std::string> commit(const fs::path& dir) {
        fs::create_directories(dir);
        const fs::path staging = dir / ".ordsec-staging";
        fs::remove_all(staging);
        fs::create_directories(staging);
        std::vector<fs::path> moved;
        try {
            for (const auto& name : names_) {
                std::ofstream out(staging / name, std::ios::binary);
                out << files_.at(name).str();
                out.close();
                if (!out) throw Error("failed to write " + (staging / name).string());
            }
            for (const auto& name : names_) {
                fs::rename(staging / name, dir / name);
                moved.push_back(dir / name);
            }
        } catch (...) {
            std::error_code ec;
            for (const auto& p : moved) fs::remove(p, ec);
            fs::remove_all(staging, ec);
            throw;
        }
        fs::remove_all(staging);
        return names_;
    }

private:
    std::vector<std::string> names_;
    std::map<std::string, std::ostringstream> files_;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open input file '" + path.string() + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Analysis {
    SymbolSequence seq;
    std::vector<PartitionReport> reports;
};

void stage_analysis(Stage& stage, const TimeSeries& series, const Analysis& a) {
    const Ranking display = a.seq.config.ranking;
    csv::write_symbols(stage.open("symbols.csv"), a.seq);
    csv::write_partitions(stage.open("partitions.csv"), a.reports, display);
    csv::write_entropy_curve(stage.open("entropy_curve.csv"), a.reports, display);

    int levels_w = 0;
    int levels_wt = 0;
    for (const auto& r : a.reports) {
        levels_w = std::max(levels_w, r.level_w);
        levels_wt = std::max(levels_wt, r.level_wt);
    }
    ordered_json summary;
    summary["series_length"] = series.size();
    summary["symbols"] = a.seq.size();
    summary["patterns"] = a.reports.size();
    summary["total_entries"] = CorpusCounts::from(a.seq).total_entries;
    if (a.seq.size() >= 2) {
        const auto tc = build_opn(a.seq);
        const auto est = markov_estimate(tc);
        csv::write_edges(stage.open("opn_edges.csv"), tc, display);
        csv::write_nodes(stage.open("opn_nodes.csv"), tc, est, display);
        summary["permutation_entropy"] = permutation_entropy(est);
    }
    summary["levels_w"] = levels_w;
    summary["levels_wt"] = levels_wt;
    stage.add("summary.json", summary.dump(2) + "\n");
}

OrdinalPattern resolve_pattern(const std::string& text, const Analysis& a) {
    auto valid_list = [&] {
        std::string list;
        for (const auto& r : a.reports) {
            if (!list.empty()) list += ", ";
            list += display_pattern(r.pattern, a.seq.config.ranking);
        }
        return list;
    };
    OrdinalPattern pattern;
    try {
        pattern = OrdinalPattern::parse(text);
        if (a.seq.config.ranking == Ranking::amplitude) pattern = amplitude_to_chronological(pattern);
    } catch (const ConfigError&) {
        throw ConfigError("cannot parse pattern '" + text + "'; valid patterns: " + valid_list());
    }
    for (const auto& r : a.reports) {
        if (r.pattern == pattern) return pattern;
    }
    throw ConfigError("pattern '" + text + "' does not occur; valid patterns: " + valid_list());
}

ordered_json split_json(const DiagonalSplit& s) {
    return {{"above", s.above}, {"below", s.below}, {"on", s.on}};
}

void stage_frm(Stage& stage, const TimeSeries& series, const Analysis& a, const FrmOptions& opts) {
    if (opts.empty()) throw ConfigError("no return map selected (use a pattern, level or maxima)");
    const Ranking display = a.seq.config.ranking;

    std::vector<const PartitionReport*> selected;
    auto select = [&](const PartitionReport& r) {
        for (const auto* s : selected) {
            if (s->pattern == r.pattern) return;
        }
        selected.push_back(&r);
    };
    for (const auto& text : opts.patterns) {
        const auto pattern = resolve_pattern(text, a);
        for (const auto& r : a.reports) {
            if (r.pattern == pattern) select(r);
        }
    }
    for (const auto& r : rank_partitions(a.reports, opts.level_by)) {
        const int level = r.level(opts.level_by);
        if ((opts.level && level == *opts.level) || (opts.top_level && level == 1)) {
            for (const auto& orig : a.reports) {
                if (orig.pattern == r.pattern) select(orig);
            }
        }
    }
    if (opts.level && selected.empty() && !opts.maxima && opts.patterns.empty()) {
        throw ConfigError("no partition has " + std::string(entropy_kind_name(opts.level_by)) +
                          " level " + std::to_string(*opts.level));
    }

    std::ostringstream combined;
    combined << "v_k,v_next,source_tag\n";
    ordered_json maps = ordered_json::array();

    for (const auto* r : selected) {
        const auto tag = MapSource::of_partition(r->pattern).tag(display);
        auto& out = stage.open("frm_partition_" + display_pattern(r->pattern, display) + ".csv");
        ordered_json entry;
        entry["source"] = tag;
        entry["level_w"] = r->level_w;
        entry["level_wt"] = r->level_wt;
        if (r->entry_indices.size() < 2) {
            out << "v_k,v_next,source_tag\n";
            entry["pairs"] = 0;
        } else {
            const auto map =
                frm_from_entries(series, r->entry_indices, MapSource::of_partition(r->pattern));
            csv::write_frm(out, map, {}, display);
            csv::write_frm(combined, map, {}, display, false);
            entry["pairs"] = map.size();
            entry["identity"] = split_json(diagonal_split(map, Diagonal::identity));
            entry["anti"] = split_json(diagonal_split(map, Diagonal::anti));
        }
        maps.push_back(entry);
    }
    if (opts.maxima) {
        const auto mf = maxima_frm(series, opts.sign_split);
        const auto tags = mf.pair_tags();
        csv::write_frm(stage.open("frm_maxima.csv"), mf.combined, tags, display);
        csv::write_frm(combined, mf.combined, tags, display, false);
        ordered_json entry;
        entry["source"] = "maxima";
        entry["pairs"] = mf.combined.size();
        entry["identity"] = split_json(diagonal_split(mf.combined, Diagonal::identity));
        entry["anti"] = split_json(diagonal_split(mf.combined, Diagonal::anti));
        if (opts.sign_split) {
            std::size_t positive = 0;
            for (auto c : mf.classes) positive += c == SignClass::positive ? 1 : 0;
            entry["maxima_positive"] = positive;
            entry["maxima_negative"] = mf.classes.size() - positive;
        }
        maps.push_back(entry);
    }
    stage.add("frm_combined.csv", combined.str());
    ordered_json doc;
    doc["maps"] = maps;
    stage.add("diagonal_split.json", doc.dump(2) + "\n");
}

void stage_levels(Stage& stage, const Analysis& a, const LevelsOptions& opts) {
    const auto labels = level_sequence(a.seq, a.reports, opts.by, opts.granularity);
    const auto indices = level_sequence_indices(a.seq, opts.granularity);
    csv::write_level_sequence(stage.open("level_sequence.csv"), indices, labels);
    csv::write_level_network(stage.open("level_network.csv"), build_level_network(labels));
}

void stage_embed(Stage& stage, const TimeSeries& series, const Analysis& a,
                 const EmbedOptions& opts) {
    const auto cloud = delay_embed(series, opts.embedding);
    csv::CloudColumns columns;
    if (opts.color != CloudColor::none) {
        const std::size_t n = cloud.size();
        const auto w = static_cast<std::size_t>(a.seq.config.w);
        std::map<OrdinalPattern, int> level_of;
        for (const auto& r : a.reports) level_of.emplace(r.pattern, r.level(opts.by));

        std::vector<bool> is_entry(series.size(), false);
        for (std::size_t k = 0; k < a.seq.size(); ++k) {
            if (k == 0 || a.seq.symbols[k] != a.seq.symbols[k - 1]) {
                is_entry[a.seq.start_indices[k]] = true;
            }
        }
        if (opts.color == CloudColor::pattern) columns.pattern.resize(n);
        if (opts.color == CloudColor::level) columns.level.assign(n, 0);
        columns.is_entry.assign(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            columns.is_entry[i] = is_entry[i];
            if (i % w != 0 || i / w >= a.seq.size()) continue;
            const auto& symbol = a.seq.symbols[i / w];
            if (opts.color == CloudColor::pattern) {
                columns.pattern[i] = display_pattern(symbol, a.seq.config.ranking);
            } else {
                columns.level[i] = level_of.at(symbol);
            }
        }
    }
    csv::write_embedding(stage.open("embedding.csv"), cloud, columns);
}

}  // namespace

RunResult run(RunManifest manifest, const fs::path& out, bool keyed) {
    if (manifest.system.has_value() == manifest.input.has_value()) {
        throw ConfigError("a run needs exactly one of a system or an input file");
    }
    if (manifest.command == Command::generate && !manifest.system) {
        throw ConfigError("generate needs a system");
    }

    TimeSeries series;
    std::string series_bytes;
    if (manifest.system) {
        series = generate_series(*manifest.system);
        std::ostringstream os;
        csv::write_series(os, series);
        series_bytes = os.str();
    } else {
        series_bytes = read_file(manifest.input->path);
        const auto digest = sha256_hex(series_bytes);
        if (!manifest.input_sha256.empty() && manifest.input_sha256 != digest) {
            throw ConfigError("input '" + manifest.input->path +
                              "' does not match the manifest's content hash");
        }
        std::istringstream is(series_bytes);
        series = parse_series(is, manifest.input->format, manifest.input->dt);
    }
    manifest.input_sha256 = sha256_hex(series_bytes);

    Stage stage;
    if (manifest.system &&
        (manifest.command == Command::generate || manifest.command == Command::pipeline)) {
        stage.add("series.csv", series_bytes);
    }
    if (manifest.command != Command::generate) {
        Analysis a;
        a.seq = symbolize(series, manifest.window);
        a.reports = analyze_partitions(series, a.seq, manifest.sub, manifest.levels);
        const Command c = manifest.command;
        if (c == Command::analyze || c == Command::pipeline) stage_analysis(stage, series, a);
        if (c == Command::frm || c == Command::pipeline) stage_frm(stage, series, a, manifest.frm);
        if (c == Command::levels || c == Command::pipeline) {
            stage_levels(stage, a, manifest.level_network);
        }
        if (c == Command::embed || c == Command::pipeline) {
            stage_embed(stage, series, a, manifest.embed);
        }
    }
    stage.add("manifest.json", manifest.dump() + "\n");

    RunResult result;
    result.out_dir = keyed ? out / manifest.hash().substr(0, 16) : out;
    result.files = stage.commit(result.out_dir);
    result.manifest = std::move(manifest);
    return result;
}

}  // namespace ordsec::pipeline
