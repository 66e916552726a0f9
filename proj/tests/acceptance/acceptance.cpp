// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ordsec/embedding.hpp"
#include "ordsec/level_transitions.hpp"
#include "ordsec/partition_network.hpp"
#include "ordsec/partition_ranking.hpp"
#include "ordsec/pipeline.hpp"
#include "ordsec/return_maps.hpp"
#include "ordsec/signal_sources.hpp"
#include "support/oracles.hpp"

using namespace ordsec;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << detail << std::endl;
    if (!pass) ++failures;
}

void note(const std::string& id, const std::string& detail) {
    std::cout << "INFO  criterion " << id << ": " << detail << std::endl;
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c, d);
    return buf;
}

struct Analysis {
    TimeSeries series;
    SymbolSequence seq;
    std::vector<PartitionReport> reports;
};

Analysis analyze(TimeSeries series, const WindowConfig& window) {
    Analysis a;
    a.series = std::move(series);
    a.seq = symbolize(a.series, window);
    a.reports = analyze_partitions(a.series, a.seq);
    return a;
}

int level_count(const std::vector<PartitionReport>& reports, EntropyKind kind) {
    int levels = 0;
    for (const auto& r : reports) levels = std::max(levels, r.level(kind));
    return levels;
}

double sample_variance(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s / static_cast<double>(v.size() - 1);
}

SimulationConfig horizon(double dt, double time_units, std::vector<double> init) {
    SimulationConfig cfg;
    cfg.dt = dt;
    cfg.total_points = static_cast<std::size_t>(std::llround(time_units / dt)) + 1;
    cfg.discard_fraction = 0.0;
    cfg.initial_state = std::move(init);
    return cfg;
}

double step_halving_ratio(const std::function<TimeSeries(const SimulationConfig&)>& integrate) {
    const std::vector<double> init{1.0, 1.0, 1.0};
    const auto coarse = integrate(horizon(0.01, 1.0, init));
    const auto fine = integrate(horizon(0.005, 1.0, init));
    const auto ref = integrate(horizon(0.001, 1.0, init));
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t k = 0; k < coarse.size(); ++k) {
        e1 = std::max(e1, std::abs(coarse.samples[k] - ref.samples[10 * k]));
        e2 = std::max(e2, std::abs(fine.samples[2 * k] - ref.samples[10 * k]));
    }
    return e1 / e2;
}

bool symbols_match_oracle(const std::vector<double>& x, int m, int tau, int w) {
    const auto seq = symbolize(x, {m, tau, w});
    const auto expected = oracle::brute_force_symbols(x, m, tau, w);
    if (seq.size() != expected.size()) return false;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (seq.symbols[k].perm() != expected[k]) return false;
    }
    return true;
}

void criterion_1() {
    const auto start = Clock::now();
    struct Cfg { int m, tau, w; };
    const std::vector<Cfg> configs{{2, 1, 1}, {3, 1, 1}, {3, 2, 2}, {4, 1, 1}, {4, 3, 1}};
    std::size_t checked = 0, mismatches = 0;
    for (std::size_t n = 1; n <= 12; ++n) {
        std::vector<double> x(n, 1.0);
        std::size_t combos = 1;
        for (std::size_t i = 0; i < n; ++i) combos *= 3;
        for (std::size_t code = 0; code < combos; ++code) {
            std::size_t c = code;
            for (std::size_t i = 0; i < n; ++i, c /= 3) x[i] = 1.0 + static_cast<double>(c % 3);
            for (const auto& cfg : configs) {
                if (static_cast<std::size_t>((cfg.m - 1) * cfg.tau) + 1 > n) continue;
                ++checked;
                if (!symbols_match_oracle(x, cfg.m, cfg.tau, cfg.w)) ++mismatches;
            }
        }
    }
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> noise;
    std::size_t random_checked = 0;
    while (random_checked < 1000) {
        const std::size_t n = 2 + rng() % 49;
        const int m = 2 + static_cast<int>(rng() % 6);
        const int tau = 1 + static_cast<int>(rng() % 5);
        const int w = 1 + static_cast<int>(rng() % 3);
        if (static_cast<std::size_t>((m - 1) * tau) + 1 > n) continue;
        std::vector<double> x(n);
        for (auto& v : x) v = noise(rng);
        ++random_checked;
        if (!symbols_match_oracle(x, m, tau, w)) ++mismatches;
    }
    const double t = seconds_since(start);
    report("1", mismatches == 0 && t < 30.0,
           std::to_string(checked) + " exhaustive + " + std::to_string(random_checked) +
               " random series checked, " + std::to_string(mismatches) + " mismatches, " +
               fmt("%.2f s (limit 30 s)", t));
}

void criterion_2() {
    std::vector<OrdinalPattern> pool;
    auto perm = OrdinalPattern::identity(3).perm();
    do pool.emplace_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng() % 29;
        const std::size_t alphabet = 1 + rng() % pool.size();
        SymbolSequence seq;
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < n; ++k) {
            seq.symbols.push_back(pool[rng() % alphabet]);
            seq.start_indices.push_back(k);
            labels.push_back(seq.symbols.back().to_string());
        }
        const double h = permutation_entropy(seq);
        worst = std::max(worst, std::abs(h - oracle::shannon_bits(oracle::pair_occupancy(labels))));
    }
    report("2", worst <= 1e-12, fmt("1000 random sequences, max |h - oracle| = %.3g (tol 1e-12)", worst));
}

void criterion_3() {
    std::mt19937_64 rng(3);
    int bad = 0, done = 0;
    while (done < 1000) {
        const std::size_t n = 2 + rng() % 3000;
        WindowConfig cfg{2 + static_cast<int>(rng() % 7), 1 + static_cast<int>(rng() % 20),
                         1 + static_cast<int>(rng() % 10)};
        if (cfg.min_series_length() > n) continue;
        ++done;
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(0.37 * static_cast<double>(i));
        const auto expected = static_cast<std::size_t>(
            std::floor((static_cast<double>(n) - (cfg.m - 1) * cfg.tau - 1) / cfg.w + 1));
        if (symbolize(x, cfg).size() != expected) ++bad;
    }
    report("3", bad == 0, "1000 random (N, m, tau, w), " + std::to_string(bad) + " count mismatches");
}

void criterion_4(const Analysis& lorenz) {
    bool ok = true;
    std::mt19937_64 rng(4);
    std::normal_distribution<double> noise;
    for (int m = 2; m <= 7; ++m) {
        std::vector<double> x(20000);
        for (auto& v : x) v = noise(rng);
        const auto distinct = distinct_patterns(symbolize(x, {m, 1, 1}));
        ok = ok && distinct.size() <= static_cast<std::size_t>(std::lround(std::tgamma(m + 1.0)));
        std::vector<double> up(200);
        for (std::size_t i = 0; i < up.size(); ++i) up[i] = std::pow(1.01, static_cast<double>(i));
        ok = ok && distinct_patterns(symbolize(up, {m, 2, 1})).size() == 1;
        std::vector<double> down(up.rbegin(), up.rend());
        ok = ok && distinct_patterns(symbolize(down, {m, 3, 2})).size() == 1;
    }
    const auto lorenz_count = distinct_patterns(lorenz.seq).size();
    ok = ok && lorenz_count <= 24;
    report("4", ok, "random runs m=2..7 within m!, monotone runs give 1 pattern, Lorenz m=4 gives " +
                        std::to_string(lorenz_count) + " <= 24");
}

void criterion_5() {
    const double lorenz = step_halving_ratio([](const SimulationConfig& c) { return integrate_lorenz({}, c); });
    const double rossler = step_halving_ratio([](const SimulationConfig& c) { return integrate_rossler({}, c); });
    MackeyGlassParams mg;
    mg.history_value = 1.0;
    const auto fixed = integrate_mackey_glass(mg, horizon(0.01, 10.0, {}));
    double drift = 0.0;
    for (double v : fixed.samples) drift = std::max(drift, std::abs(v - 1.0));
    const bool ok = lorenz >= 12 && lorenz <= 20 && rossler >= 12 && rossler <= 20 && drift <= 1e-9;
    report("5", ok,
           fmt("step-halving ratio Lorenz %.3f, Rossler %.3f (range [12, 20]); Mackey-Glass x=1 max drift %.3g (tol 1e-9)",
               lorenz, rossler, drift));
}

void criterion_6(const Analysis& lorenz, double runtime) {
    const auto sub = extract_subseries(lorenz.series, lorenz.seq, OrdinalPattern::parse("4-3-2-1"));
    const auto [lo, hi] = std::minmax_element(sub.samples.begin(), sub.samples.end());
    const bool ok = *lo >= -9.3 && *hi <= 19.5 && runtime < 60.0;
    report("6", ok,
           fmt("4-3-2-1 sub-series range [%.3f, %.3f] (allowed [-9.3, 19.5]), integration+analysis %.2f s (limit 60 s)",
               *lo, *hi, runtime));
}

void criterion_7(const Analysis& lorenz) {
    const auto entries = entry_points(lorenz.seq, OrdinalPattern::parse("4-3-2-1"));
    const auto desc = frm_from_entries(lorenz.series, entries);
    const auto maxima = maxima_frm(lorenz.series, false);
    const double dist = mean_nearest_distance(desc, maxima.combined);
    const double diag = bounding_box_diagonal(maxima.combined);

    const auto peaks = local_maxima_indices(lorenz.series);
    std::size_t near = 0;
    for (std::size_t e : entries) {
        const auto it = std::lower_bound(peaks.begin(), peaks.end(), e);
        std::size_t best = SIZE_MAX;
        if (it != peaks.end()) best = *it - e;
        if (it != peaks.begin()) best = std::min(best, e - *std::prev(it));
        if (best <= 18) ++near;
    }
    const double frac = static_cast<double>(near) / static_cast<double>(entries.size());
    report("7", dist < 0.05 * diag && frac >= 0.95,
           fmt("mean nearest distance %.4f = %.3f%% of diagonal %.3f (limit 5%%); %.2f%% of entries within 18 samples of a maximum (min 95%%)",
               dist, 100.0 * dist / diag, diag, 100.0 * frac));
}

void criterion_8(const Analysis& lorenz) {
    std::vector<double> hw, hwt;
    for (const auto& r : lorenz.reports) {
        hw.push_back(r.h_w);
        hwt.push_back(r.h_wt);
    }
    const int levels = level_count(lorenz.reports, EntropyKind::weighted_transition);
    const double vw = sample_variance(hw), vwt = sample_variance(hwt);
    report("8", levels == 3 && vw > vwt,
           "h_wt levels = " + std::to_string(levels) + fmt(" (want 3); var(h_w) %.5f > var(h_wt) %.5f", vw, vwt));
}

void criterion_9(const Analysis& lorenz) {
    const auto labels = level_sequence(lorenz.seq, lorenz.reports, EntropyKind::weighted_transition);
    const auto net = build_level_network(labels);
    const double total = static_cast<double>(net.total());
    const double w23 = static_cast<double>(net.weight(2, 3));
    const double w33 = static_cast<double>(net.weight(3, 3));
    std::ostringstream all;
    for (int a = 1; a <= net.levels; ++a)
        for (int b = 1; b <= net.levels; ++b) all << ' ' << a << "->" << b << '=' << net.weight(a, b);
    report("9", w23 <= 0.01 * total && w33 <= 0.01 * total,
           fmt("weight(2->3) = %.0f, weight(3->3) = %.0f of total %.0f (limit 1%% each)", w23, w33, total));
    note("9", "level network weights:" + all.str());
}

void criterion_10(const Analysis& lorenz) {
    int violations = 0, anti_violations = 0;
    std::ostringstream detail, anti_detail;
    for (const auto& r : lorenz.reports) {
        const int level = r.level_wt;
        DiagonalSplit split, anti;
        if (r.entry_indices.size() >= 2) {
            const auto map = frm_from_entries(lorenz.series, r.entry_indices);
            split = diagonal_split(map, Diagonal::identity);
            anti = diagonal_split(map, Diagonal::anti);
        }
        const bool ok = level == 3 ? split.one_side() : split.both_sides();
        const bool anti_ok = level == 3 ? anti.one_side() : anti.both_sides();
        if (!ok) {
            ++violations;
            detail << ' ' << r.pattern.to_string() << "(L" << level << ": " << split.above << " above/"
                   << split.below << " below)";
        }
        if (!anti_ok) {
            ++anti_violations;
            anti_detail << ' ' << r.pattern.to_string() << "(L" << level << ')';
        }
    }
    report("10", violations <= 1,
           std::to_string(violations) + " partitions violate the side rule about y = x (allowed 1)" +
               (violations ? ":" + detail.str() : std::string()));
    note("10", "about the wing-separating line y = -x: " + std::to_string(anti_violations) +
                   " violating partitions" + (anti_violations ? ":" + anti_detail.str() : std::string()));
}

Analysis simulate(System system, const WindowConfig& window) {
    pipeline::SystemOptions opts;
    opts.system = system;
    opts.sim.seed = 1;
    return analyze(pipeline::generate_series(opts), window);
}

void criterion_11() {
    const auto start = Clock::now();
    const auto rossler = simulate(System::rossler, window_from_embedding(EmbeddingConfig::for_system(System::rossler), 4));
    const int r_w = level_count(rossler.reports, EntropyKind::weighted);
    const int r_wt = level_count(rossler.reports, EntropyKind::weighted_transition);
    report("11a", r_w == 3 && r_wt == 2,
           "Rossler (M=3, T=144, m=4, tau=96): " + std::to_string(r_w) + " h_w levels (want 3), " +
               std::to_string(r_wt) + " h_wt levels (want 2)");

    const auto mg = simulate(System::mackey_glass,
                             window_from_embedding(EmbeddingConfig::for_system(System::mackey_glass), 4));
    const int m_w = level_count(mg.reports, EntropyKind::weighted);
    const int m_wt = level_count(mg.reports, EntropyKind::weighted_transition);
    report("11b", m_w == 1 && m_wt == 1,
           "Mackey-Glass (M=2, T=204, m=4, tau=68): " + std::to_string(m_w) + " h_w levels, " +
               std::to_string(m_wt) + " h_wt levels (want 1 each)");

    const auto lorenz10 = simulate(System::lorenz, window_from_embedding(EmbeddingConfig::for_system(System::lorenz), 10));
    const auto patterns = distinct_patterns(lorenz10.seq).size();
    std::size_t top = 0, empty = 0;
    for (const auto& r : lorenz10.reports) {
        if (r.level_wt != 1) continue;
        ++top;
        if (r.entry_indices.size() < 2 || frm_from_entries(lorenz10.series, r.entry_indices).size() == 0) ++empty;
    }
    report("11c", patterns <= 3628800 && top > 0 && empty == 0,
           "Lorenz m=10 (tau=2): " + std::to_string(patterns) + " occurring patterns (<= 10!), " +
               std::to_string(top) + " top-level partitions, " + std::to_string(empty) + " with empty FRM");
    note("11", fmt("Rossler, Mackey-Glass and m=10 runs took %.2f s", seconds_since(start)));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void criterion_12() {
    const fs::path root = fs::temp_directory_path() / "ordsec_acceptance";
    fs::remove_all(root);

    pipeline::RunManifest m;
    m.command = pipeline::Command::pipeline;
    pipeline::SystemOptions sys;
    sys.sim.seed = 1;
    m.system = sys;
    m.embed.embedding = EmbeddingConfig::for_system(System::lorenz);
    m.window = window_from_embedding(m.embed.embedding, 4);
    m.frm.top_level = true;
    m.frm.maxima = true;
    m.frm.sign_split = true;
    m.embed.color = pipeline::CloudColor::level;

    const auto first = pipeline::run(m, root / "first", true);
    const auto replay = pipeline::RunManifest::load(first.out_dir / "manifest.json");
    const auto second = pipeline::run(replay, root / "second", true);

    bool identical = first.files == second.files;
    std::size_t bytes = 0;
    for (const auto& name : first.files) {
        const auto a = slurp(first.out_dir / name);
        identical = identical && a == slurp(second.out_dir / name);
        bytes += a.size();
    }
    report("12", identical,
           std::to_string(first.files.size()) + " files (" + std::to_string(bytes) +
               " bytes) re-run from manifest, byte-identical: " + (identical ? "yes" : "no"));
    fs::remove_all(root);
}

}  // namespace

int main() {
    try {
        criterion_1();
        criterion_2();
        criterion_3();

        const auto start = Clock::now();
        const auto lorenz = simulate(System::lorenz, WindowConfig{});
        const double lorenz_runtime = seconds_since(start);

        criterion_4(lorenz);
        criterion_5();
        criterion_6(lorenz, lorenz_runtime);
        criterion_7(lorenz);
        criterion_8(lorenz);
        criterion_9(lorenz);
        criterion_10(lorenz);
        criterion_11();
        criterion_12();
    } catch (const std::exception& e) {
        std::cout << "FAIL  acceptance aborted: " << e.what() << std::endl;
        return 1;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
