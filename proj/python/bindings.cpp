#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ordsec/embedding.hpp"
#include "ordsec/errors.hpp"
#include "ordsec/level_transitions.hpp"
#include "ordsec/partition_network.hpp"
#include "ordsec/partition_ranking.hpp"
#include "ordsec/pipeline.hpp"
#include "ordsec/return_maps.hpp"
#include "ordsec/signal_sources.hpp"

namespace py = pybind11;
using namespace ordsec;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

TimeSeries to_series(const Array& x, double dt) {
    TimeSeries s;
    s.samples.assign(x.data(), x.data() + x.size());
    s.dt = dt;
    return s;
}

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

SimulationConfig sim_config(double dt, std::size_t points, double discard,
                            std::optional<std::vector<double>> init, std::uint64_t seed) {
    SimulationConfig cfg;
    cfg.dt = dt;
    cfg.total_points = points;
    cfg.discard_fraction = discard;
    if (init) cfg.initial_state = *init;
    cfg.seed = seed;
    return cfg;
}

std::vector<std::string> patterns_to_strings(const std::vector<OrdinalPattern>& ps) {
    std::vector<std::string> out;
    out.reserve(ps.size());
    for (const auto& p : ps) out.push_back(p.to_string());
    return out;
}

py::dict frm_dict(const ReturnMap& map, Ranking display) {
    std::vector<double> v, next;
    for (const auto& [a, b] : map.pairs) {
        v.push_back(a);
        next.push_back(b);
    }
    py::dict d;
    d["v"] = to_array(v);
    d["v_next"] = to_array(next);
    d["entry_indices"] = map.entry_indices;
    d["source"] = map.source.tag(display);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Ordinal partitions as Poincare sections";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<LengthError>(m, "LengthError", base.ptr());
    py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
    py::register_exception<NotFoundError>(m, "NotFoundError", base.ptr());

    m.def(
        "lorenz",
        [](double sigma, double rho, double beta, double dt, std::size_t points, double discard,
           std::optional<std::vector<double>> init, std::uint64_t seed) {
            return to_array(integrate_lorenz({sigma, rho, beta}, sim_config(dt, points, discard, init, seed)).samples);
        },
        py::arg("sigma") = 10.0, py::arg("rho") = 28.0, py::arg("beta") = 8.0 / 3.0,
        py::arg("dt") = 0.01, py::arg("points") = 1'000'000, py::arg("discard") = 0.9,
        py::arg("initial_state") = py::none(), py::arg("seed") = 1);

    m.def(
        "rossler",
        [](double alpha, double beta, double gamma, double dt, std::size_t points, double discard,
           std::optional<std::vector<double>> init, std::uint64_t seed) {
            return to_array(integrate_rossler({alpha, beta, gamma}, sim_config(dt, points, discard, init, seed)).samples);
        },
        py::arg("alpha") = 0.2, py::arg("beta") = 0.2, py::arg("gamma") = 9.0,
        py::arg("dt") = 0.01, py::arg("points") = 1'000'000, py::arg("discard") = 0.9,
        py::arg("initial_state") = py::none(), py::arg("seed") = 1);

    m.def(
        "mackey_glass",
        [](double beta, double gamma, double delay, double n, double history, double dt,
           std::size_t points, double discard) {
            MackeyGlassParams p{beta, gamma, delay, n, history};
            return to_array(integrate_mackey_glass(p, sim_config(dt, points, discard, {}, 1)).samples);
        },
        py::arg("beta") = 2.0, py::arg("gamma") = 1.0, py::arg("delay") = 2.0, py::arg("n") = 9.65,
        py::arg("history") = 0.5, py::arg("dt") = 0.01, py::arg("points") = 1'000'000,
        py::arg("discard") = 0.9);

    m.def(
        "pattern_of_window",
        [](const Array& values, const std::string& ranking) {
            return pattern_of_window({values.data(), static_cast<std::size_t>(values.size())},
                                     parse_ranking(ranking))
                .perm();
        },
        py::arg("values"), py::arg("ranking") = "chronological");

    m.def(
        "symbolize",
        [](const Array& x, int m, int tau, int w, const std::string& ranking) {
            const auto seq = symbolize(to_series(x, 1.0), {m, tau, w, parse_ranking(ranking)});
            std::vector<std::string> symbols;
            for (const auto& s : seq.symbols) symbols.push_back(display_pattern(s, seq.config.ranking));
            return py::make_tuple(symbols, seq.start_indices);
        },
        py::arg("x"), py::arg("m") = 4, py::arg("tau") = 6, py::arg("w") = 1,
        py::arg("ranking") = "chronological",
        "Returns (patterns, start_indices); patterns are dash-joined in the requested ranking.");

    m.def(
        "permutation_entropy",
        [](const Array& x, int m, int tau, int w) {
            return permutation_entropy(symbolize(to_series(x, 1.0), {m, tau, w}));
        },
        py::arg("x"), py::arg("m") = 4, py::arg("tau") = 6, py::arg("w") = 1);

    m.def(
        "transition_network",
        [](const Array& x, int m, int tau, int w) {
            const auto tc = build_opn(symbolize(to_series(x, 1.0), {m, tau, w}));
            const auto est = markov_estimate(tc);
            const auto n = static_cast<py::ssize_t>(tc.node_count());
            py::array_t<std::uint64_t> counts({n, n});
            std::copy(tc.counts.data().begin(), tc.counts.data().end(), counts.mutable_data());
            py::dict d;
            d["patterns"] = patterns_to_strings(tc.patterns);
            d["counts"] = counts;
            d["occupancy"] = to_array(est.occupancy);
            return d;
        },
        py::arg("x"), py::arg("m") = 4, py::arg("tau") = 6, py::arg("w") = 1);

    m.def(
        "analyze",
        [](const Array& x, int m, int tau, int w, int m_prime, int tau_prime, int w_prime,
           double gap_fraction, int max_levels) {
            const auto series = to_series(x, 1.0);
            const auto seq = symbolize(series, {m, tau, w});
            const auto reports = analyze_partitions(series, seq, {m_prime, tau_prime, w_prime},
                                                    {gap_fraction, max_levels});
            py::list rows;
            for (const auto& r : reports) {
                py::dict d;
                d["pattern"] = r.pattern.to_string();
                d["O"] = r.occurrence;
                d["O_hat"] = r.entries;
                d["K"] = r.k;
                d["K_hat"] = r.k_hat;
                d["h"] = r.h;
                d["h_w"] = r.h_w;
                d["h_wt"] = r.h_wt;
                d["level_w"] = r.level_w;
                d["level_wt"] = r.level_wt;
                d["entry_indices"] = r.entry_indices;
                d["degenerate"] = r.degenerate;
                rows.append(d);
            }
            return rows;
        },
        py::arg("x"), py::arg("m") = 4, py::arg("tau") = 6, py::arg("w") = 1, py::arg("m_prime") = 3,
        py::arg("tau_prime") = 1, py::arg("w_prime") = 1, py::arg("gap_fraction") = 0.15,
        py::arg("max_levels") = 3,
        "One dict per occurring pattern, in lexicographic pattern order.");

    m.def(
        "detect_levels",
        [](std::vector<double> sorted_desc, double gap_fraction, int max_levels) {
            return detect_levels(sorted_desc, {gap_fraction, max_levels});
        },
        py::arg("sorted_desc"), py::arg("gap_fraction") = 0.15, py::arg("max_levels") = 3);

    m.def(
        "partition_frm",
        [](const Array& x, const std::string& pattern, int m, int tau, int w) {
            const auto series = to_series(x, 1.0);
            const auto seq = symbolize(series, {m, tau, w});
            const auto p = OrdinalPattern::parse(pattern);
            const auto entries = entry_points(seq, p);
            if (entries.empty()) throw NotFoundError("pattern " + pattern + " does not occur");
            return frm_dict(frm_from_entries(series, entries, MapSource::of_partition(p)),
                            Ranking::chronological);
        },
        py::arg("x"), py::arg("pattern"), py::arg("m") = 4, py::arg("tau") = 6, py::arg("w") = 1);

    m.def(
        "maxima_frm",
        [](const Array& x, bool sign_split) {
            const auto frm = maxima_frm(to_series(x, 1.0), sign_split);
            auto d = frm_dict(frm.combined, Ranking::chronological);
            d["tags"] = frm.pair_tags();
            return d;
        },
        py::arg("x"), py::arg("sign_split") = false);

    m.def("local_maxima", [](const Array& x) { return local_maxima_indices(to_series(x, 1.0)); },
          py::arg("x"));

    m.def(
        "diagonal_split",
        [](const Array& v, const Array& v_next, const std::string& diagonal) {
            if (v.size() != v_next.size()) throw ConfigError("v and v_next must have equal length");
            ReturnMap map;
            for (py::ssize_t k = 0; k < v.size(); ++k) map.pairs.emplace_back(v.data()[k], v_next.data()[k]);
            Diagonal d = Diagonal::identity;
            if (diagonal == "anti") d = Diagonal::anti;
            else if (diagonal != "identity") throw ConfigError("diagonal must be 'identity' or 'anti'");
            const auto s = diagonal_split(map, d);
            return py::dict(py::arg("above") = s.above, py::arg("below") = s.below, py::arg("on") = s.on);
        },
        py::arg("v"), py::arg("v_next"), py::arg("diagonal") = "identity");

    m.def(
        "level_network",
        [](const Array& x, int m, int tau, int w, const std::string& by, const std::string& granularity) {
            const auto series = to_series(x, 1.0);
            const auto seq = symbolize(series, {m, tau, w});
            const auto reports = analyze_partitions(series, seq);
            const auto g = parse_granularity(granularity);
            const auto labels = level_sequence(seq, reports, parse_entropy_kind(by), g);
            const auto net = build_level_network(labels);
            const auto n = static_cast<py::ssize_t>(net.levels);
            py::array_t<std::uint64_t> weights({n, n});
            std::copy(net.weights.data().begin(), net.weights.data().end(), weights.mutable_data());
            return py::make_tuple(labels, weights);
        },
        py::arg("x"), py::arg("m") = 4, py::arg("tau") = 6, py::arg("w") = 1, py::arg("by") = "h_wt",
        py::arg("granularity") = "symbol",
        "Returns (level labels, weights) with weights[a-1, b-1] counting a -> b steps.");

    m.def(
        "delay_embed",
        [](const Array& x, int dim, int lag) {
            const auto cloud = delay_embed(to_series(x, 1.0), {dim, lag});
            py::array_t<double> out({static_cast<py::ssize_t>(cloud.size()), static_cast<py::ssize_t>(dim)});
            std::copy(cloud.coords.begin(), cloud.coords.end(), out.mutable_data());
            return out;
        },
        py::arg("x"), py::arg("dim") = 3, py::arg("lag") = 9);

    m.def(
        "window_from_embedding",
        [](int dim, int lag, int m) {
            const auto w = window_from_embedding({dim, lag}, m);
            return py::dict(py::arg("m") = w.m, py::arg("tau") = w.tau, py::arg("w") = w.w);
        },
        py::arg("dim"), py::arg("lag"), py::arg("m"));

    m.def(
        "run_manifest",
        [](const std::filesystem::path& manifest, const std::filesystem::path& out, bool keyed) {
            const auto result = pipeline::run(pipeline::RunManifest::load(manifest), out, keyed);
            return py::make_tuple(result.out_dir, result.files);
        },
        py::arg("manifest"), py::arg("out"), py::arg("keyed") = false,
        "Re-runs a saved manifest.json; returns (output directory, file names).");

    m.attr("__version__") = std::string(pipeline::kToolVersion);
}
