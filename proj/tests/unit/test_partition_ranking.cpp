#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "ordsec/errors.hpp"
#include "ordsec/partition_network.hpp"
#include "ordsec/partition_ranking.hpp"
#include "ordsec/signal_sources.hpp"
#include "support/oracles.hpp"

using namespace ordsec;

namespace {

const OrdinalPattern A = OrdinalPattern::parse("1-2-3");
const OrdinalPattern B = OrdinalPattern::parse("3-2-1");
const OrdinalPattern C = OrdinalPattern::parse("2-1-3");

SymbolSequence sequence_of(std::vector<OrdinalPattern> symbols, std::size_t source_len = 0) {
    SymbolSequence seq;
    seq.config = {3, 1, 1};
    for (std::size_t k = 0; k < symbols.size(); ++k) seq.start_indices.push_back(k);
    seq.source_len = source_len ? source_len : symbols.size() + 2;
    seq.symbols = std::move(symbols);
    return seq;
}

TimeSeries series_of(std::vector<double> x) {
    TimeSeries s;
    s.samples = std::move(x);
    return s;
}

PartitionReport report_with(const char* pattern, double h_wt) {
    PartitionReport r;
    r.pattern = OrdinalPattern::parse(pattern);
    r.h_wt = h_wt;
    return r;
}

TimeSeries random_walk(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> step;
    TimeSeries s;
    double x = 0.0;
    for (std::size_t i = 0; i < n; ++i) s.samples.push_back(x += step(rng));
    return s;
}

}  // namespace

TEST(ExtractSubseries, SamplesAtWindowStarts) {
    const auto seq = sequence_of({A, B, A});
    const auto sub = extract_subseries(series_of({5, 6, 7, 8, 9}), seq, A);
    EXPECT_EQ(sub.samples, (std::vector<double>{5, 7}));
    EXPECT_THROW(extract_subseries(series_of({5, 6, 7, 8, 9}), seq, C), NotFoundError);
}

TEST(ExtractSubseries, ConstantSymbolTakesLeadingSamples) {
    const auto seq = sequence_of({A, A, A, A});
    const auto sub = extract_subseries(series_of({1, 2, 3, 4, 5, 6}), seq, A);
    EXPECT_EQ(sub.samples, (std::vector<double>{1, 2, 3, 4}));
}

TEST(EntryPoints, RunStarts) {
    const auto seq = sequence_of({A, A, B, B, A});
    EXPECT_EQ(entry_points(seq, A), (std::vector<std::size_t>{0, 4}));
    EXPECT_EQ(entry_points(seq, B), (std::vector<std::size_t>{2}));
    EXPECT_EQ(entry_points(sequence_of({A, B, A, B}), A), (std::vector<std::size_t>{0, 2}));
    EXPECT_TRUE(entry_points(seq, C).empty());
}

TEST(CorpusCounts, WindowsAndEntries) {
    const auto c = CorpusCounts::from(sequence_of({A, A, B, B, A, C}));
    EXPECT_EQ(c.total_windows, 6u);
    EXPECT_EQ(c.total_entries, 4u);
}

TEST(ScaledEntropy, ReducesToShannonAtUnitScale) {
    const std::vector<double> p{0.25, 0.25, 0.5};
    EXPECT_DOUBLE_EQ(scaled_entropy(p, 1.0), shannon_entropy_bits(p));
    EXPECT_DOUBLE_EQ(scaled_entropy(p, 0.0), 0.0);
    const double k = 0.3;
    double want = 0.0;
    for (double pi : p) want -= k * pi * std::log(k * pi) / std::log(2.0);
    EXPECT_NEAR(scaled_entropy(p, k), want, 1e-15);
}

TEST(WeightedEntropies, SinglePartitionEqualsPlainEntropy) {
    const auto series = random_walk(3, 400);
    auto seq = symbolize(series, {3, 1, 1});
    // Relabel every window with one pattern so K = K_hat = 1.
    for (auto& s : seq.symbols) s = A;
    const auto r = weighted_entropies(series, seq, A, {}, CorpusCounts::from(seq));
    EXPECT_DOUBLE_EQ(r.k, 1.0);
    EXPECT_DOUBLE_EQ(r.k_hat, 1.0);
    EXPECT_FALSE(r.degenerate);
    EXPECT_GT(r.h, 0.0);
    EXPECT_DOUBLE_EQ(r.h_w, r.h);
    EXPECT_DOUBLE_EQ(r.h_wt, r.h);
}

TEST(WeightedEntropies, ShortSubseriesIsDegenerate) {
    const auto seq = sequence_of({A, B, A, B, A, B, C, C, C});
    const auto series = series_of({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    const auto corpus = CorpusCounts::from(seq);
    const auto r = weighted_entropies(series, seq, A, {}, corpus);
    EXPECT_EQ(r.occurrence, 3u);
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.h, 0.0);
    EXPECT_EQ(r.h_w, 0.0);
    EXPECT_EQ(r.h_wt, 0.0);
    EXPECT_FALSE(weighted_entropies(series_of({0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0}),
                                    sequence_of({A, A, A, A, A, B, B, B, B}), A, {},
                                    CorpusCounts::from(sequence_of({A, A, A, A, A, B, B, B, B})))
                     .degenerate);
}

TEST(WeightedEntropies, TwoPartitionToy) {
    std::vector<OrdinalPattern> symbols;
    std::vector<double> x;
    for (int k = 0; k < 11; ++k) {
        symbols.push_back(k % 2 == 0 ? A : B);
        x.push_back(k % 2 == 0 ? 0.0 : 1.0);
    }
    x.push_back(0.0);
    x.push_back(1.0);
    const auto seq = sequence_of(symbols, x.size());
    const auto r = weighted_entropies(series_of(x), seq, A, {}, CorpusCounts::from(seq));
    EXPECT_EQ(r.occurrence, 6u);
    EXPECT_EQ(r.entries, 6u);
    EXPECT_DOUBLE_EQ(r.k, 6.0 / 11.0);
    EXPECT_DOUBLE_EQ(r.k_hat, 6.0 / 11.0);
    // The sub-series is constant, so its network is one node with p = 1 and
    // h = 0; the scaled entropy keeps the -K log2 K term.
    EXPECT_EQ(r.h, 0.0);
    const double k = 6.0 / 11.0;
    EXPECT_NEAR(r.h_w, -k * std::log(k) / std::log(2.0), 1e-15);
    EXPECT_NEAR(r.h_w, 0.4770, 1e-4);
    EXPECT_DOUBLE_EQ(r.h_wt, r.h_w);
}

TEST(WeightedEntropies, AbsentPattern) {
    const auto seq = sequence_of({A, B, A, B});
    EXPECT_THROW(weighted_entropies(series_of({1, 2, 3, 4, 5, 6}), seq, C, {}, CorpusCounts::from(seq)),
                 NotFoundError);
}

TEST(RankPartitions, DescendingWithLexicographicTies) {
    const std::vector<PartitionReport> reports{report_with("1-2-3", 0.2), report_with("3-2-1", 0.9),
                                               report_with("2-1-3", 0.9)};
    const auto ranked = rank_partitions(reports, EntropyKind::weighted_transition);
    EXPECT_EQ(ranked[0].pattern, OrdinalPattern::parse("2-1-3"));
    EXPECT_EQ(ranked[1].pattern, OrdinalPattern::parse("3-2-1"));
    EXPECT_EQ(ranked[2].pattern, OrdinalPattern::parse("1-2-3"));
    const auto single = rank_partitions({reports[0]}, EntropyKind::weighted);
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(single[0].pattern, reports[0].pattern);
}

TEST(EntropyKind, Names) {
    EXPECT_EQ(parse_entropy_kind("h_w"), EntropyKind::weighted);
    EXPECT_EQ(parse_entropy_kind("h_wt"), EntropyKind::weighted_transition);
    EXPECT_EQ(entropy_kind_name(EntropyKind::weighted), "h_w");
    EXPECT_THROW(parse_entropy_kind("h"), ConfigError);
}

TEST(DetectLevels, TwoDominantGaps) {
    const std::vector<double> h{0.9, 0.85, 0.5, 0.45, 0.1};
    EXPECT_EQ(detect_levels(h), (std::vector<int>{1, 1, 2, 2, 3}));
}

TEST(DetectLevels, EvenSpacingHasNoQualifyingGap) {
    std::vector<double> h;
    for (int i = 20; i >= 0; --i) h.push_back(0.05 * i);
    EXPECT_EQ(detect_levels(h), std::vector<int>(h.size(), 1));
    // The threshold is relative to the spread, so three evenly spaced values
    // split at both gaps however close they are.
    const std::vector<double> close{0.5, 0.49, 0.48};
    EXPECT_EQ(detect_levels(close), (std::vector<int>{1, 2, 3}));
    const std::vector<double> one{0.3};
    EXPECT_EQ(detect_levels(one), (std::vector<int>{1}));
    const std::vector<double> flat{0.3, 0.3};
    EXPECT_EQ(detect_levels(flat), (std::vector<int>{1, 1}));
}

TEST(DetectLevels, MaxLevelsCapsSplits) {
    const std::vector<double> h{1.0, 0.7, 0.4, 0.1};
    EXPECT_EQ(detect_levels(h, {0.15, 2}).back(), 2);
    EXPECT_EQ(detect_levels(h, {0.15, 4}), (std::vector<int>{1, 2, 3, 4}));
    EXPECT_EQ(detect_levels(h, {0.15, 1}), (std::vector<int>{1, 1, 1, 1}));
}

TEST(DetectLevels, Errors) {
    EXPECT_THROW(detect_levels(std::vector<double>{}), ConfigError);
    EXPECT_THROW(detect_levels(std::vector<double>{0.1, 0.5}), ConfigError);
}

TEST(DetectLevels, PropertyScaleInvariant) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> h(1 + rng() % 20);
        for (auto& v : h) v = u(rng);
        std::sort(h.rbegin(), h.rend());
        const auto labels = detect_levels(h);
        for (double c : {0.001, 0.37, 2.0, 1000.0}) {
            std::vector<double> scaled;
            for (double v : h) scaled.push_back(c * v);
            EXPECT_EQ(detect_levels(scaled), labels);
        }
        for (std::size_t i = 1; i < labels.size(); ++i) {
            EXPECT_GE(labels[i], labels[i - 1]);
            EXPECT_LE(labels[i] - labels[i - 1], 1);
        }
        EXPECT_EQ(labels.front(), 1);
        EXPECT_LE(labels.back(), 3);
    }
}

TEST(AnalyzePartitions, PropertyConservation) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto series = random_walk(seed, 300 + seed * 17);
        const auto seq = symbolize(series, {4, 2, 1});
        const auto reports = analyze_partitions(series, seq);
        const auto corpus = CorpusCounts::from(seq);
        std::size_t occ = 0, entries = 0;
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto& r = reports[i];
            if (i > 0) EXPECT_LT(reports[i - 1].pattern, r.pattern);
            EXPECT_LE(r.entries, r.occurrence);
            EXPECT_EQ(r.entries, r.entry_indices.size());
            EXPECT_EQ(r.entry_indices, entry_points(seq, r.pattern));
            EXPECT_GT(r.k, 0.0);
            EXPECT_LE(r.k, 1.0);
            EXPECT_GE(r.level_w, 1);
            EXPECT_GE(r.level_wt, 1);
            occ += r.occurrence;
            entries += r.entries;
            const auto single = weighted_entropies(series, seq, r.pattern, {}, corpus);
            EXPECT_EQ(single.h_w, r.h_w);
            EXPECT_EQ(single.h_wt, r.h_wt);
        }
        // Exact count conservation behind sum K = sum K_hat = 1.
        EXPECT_EQ(occ, corpus.total_windows);
        EXPECT_EQ(entries, corpus.total_entries);
        EXPECT_LE(corpus.total_entries, corpus.total_windows);
        EXPECT_EQ(corpus.total_windows, series.size() - 6);
    }
}

TEST(AnalyzePartitions, MismatchedSequenceRejected) {
    const auto series = random_walk(1, 100);
    const auto seq = symbolize(series, {3, 1, 1});
    const auto shorter = random_walk(1, 90);
    EXPECT_THROW(analyze_partitions(shorter, seq), ConfigError);
}

TEST(AnalyzePartitions, LorenzDescendingPartition) {
    SimulationConfig cfg;
    cfg.seed = 1;
    const auto series = integrate_lorenz({}, cfg);
    const auto seq = symbolize(series, {});
    const auto sub = extract_subseries(series, seq, OrdinalPattern::parse("4-3-2-1"));
    const auto [lo, hi] = std::minmax_element(sub.samples.begin(), sub.samples.end());
    EXPECT_GE(*lo, -8.3 - 1.0);
    EXPECT_LE(*hi, 18.5 + 1.0);

    auto reports = analyze_partitions(series, seq);
    EXPECT_LE(reports.size(), 24u);
    std::vector<double> h;
    const auto ranked = rank_partitions(reports, EntropyKind::weighted_transition);
    for (const auto& r : ranked) h.push_back(r.h_wt);
    EXPECT_EQ(detect_levels(h).back(), 3);
    std::vector<double> hw;
    for (const auto& r : rank_partitions(reports, EntropyKind::weighted)) hw.push_back(r.h_w);
    EXPECT_EQ(detect_levels(hw).back(), 3);
    // The monotone partitions dominate h_w but drop to the second h_wt level;
    // the lowest level is the same set of partitions for both entropies.
    for (const auto& r : reports) {
        const auto text = r.pattern.to_string();
        if (text == "4-3-2-1" || text == "1-2-3-4") {
            EXPECT_EQ(r.level_w, 1) << text;
            EXPECT_EQ(r.level_wt, 2) << text;
        }
        EXPECT_EQ(r.level_w == 3, r.level_wt == 3) << text;
    }
}
