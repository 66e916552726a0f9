#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ordsec/errors.hpp"
#include "ordsec/pipeline.hpp"

namespace {

using namespace ordsec;
using namespace ordsec::pipeline;

struct ParamFlags {
    std::optional<double> sigma, rho, beta, alpha, gamma, delay, n, history;
};

struct WindowFlags {
    std::optional<int> tau;
    std::optional<int> embed_dim;
    std::optional<int> embed_lag;
    std::string ranking = "chronological";
};

struct OutputFlags {
    std::string out;
    bool keyed = false;
};

void add_simulation(CLI::App* cmd, SystemOptions& sys, ParamFlags& p, std::vector<double>& init,
                    std::uint64_t& seed) {
    cmd->add_option("--dt", sys.sim.dt, "Integration step")->capture_default_str();
    cmd->add_option("--points", sys.sim.total_points, "Total grid points integrated")
        ->capture_default_str();
    cmd->add_option("--discard", sys.sim.discard_fraction, "Leading fraction dropped as transient")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "Seed for the random initial condition")->capture_default_str();
    cmd->add_option("--init", init, "Explicit initial state x,y,z")->delimiter(',');
    cmd->add_option("--sigma", p.sigma, "Lorenz sigma");
    cmd->add_option("--rho", p.rho, "Lorenz rho");
    cmd->add_option("--beta", p.beta, "Lorenz/Rossler/Mackey-Glass beta");
    cmd->add_option("--alpha", p.alpha, "Rossler alpha");
    cmd->add_option("--gamma", p.gamma, "Rossler/Mackey-Glass gamma");
    cmd->add_option("--delay", p.delay, "Mackey-Glass delay");
    cmd->add_option("--n", p.n, "Mackey-Glass exponent");
    cmd->add_option("--history", p.history, "Mackey-Glass constant history");
}

void apply_params(SystemOptions& sys, const ParamFlags& p, const std::vector<double>& init,
                  std::uint64_t seed) {
    auto reject = [&](const std::optional<double>& flag, const char* name) {
        if (flag) {
            throw ConfigError(std::string("--") + name + " does not apply to " +
                              std::string(system_name(sys.system)));
        }
    };
    switch (sys.system) {
        case System::lorenz:
            if (p.sigma) sys.lorenz.sigma = *p.sigma;
            if (p.rho) sys.lorenz.rho = *p.rho;
            if (p.beta) sys.lorenz.beta = *p.beta;
            reject(p.alpha, "alpha");
            reject(p.gamma, "gamma");
            reject(p.delay, "delay");
            reject(p.n, "n");
            reject(p.history, "history");
            break;
        case System::rossler:
            if (p.alpha) sys.rossler.alpha = *p.alpha;
            if (p.beta) sys.rossler.beta = *p.beta;
            if (p.gamma) sys.rossler.gamma = *p.gamma;
            reject(p.sigma, "sigma");
            reject(p.rho, "rho");
            reject(p.delay, "delay");
            reject(p.n, "n");
            reject(p.history, "history");
            break;
        case System::mackey_glass:
            if (p.beta) sys.mackey_glass.beta = *p.beta;
            if (p.gamma) sys.mackey_glass.gamma = *p.gamma;
            if (p.delay) sys.mackey_glass.delay = *p.delay;
            if (p.n) sys.mackey_glass.n = *p.n;
            if (p.history) sys.mackey_glass.history_value = *p.history;
            reject(p.sigma, "sigma");
            reject(p.rho, "rho");
            reject(p.alpha, "alpha");
            break;
    }
    sys.sim.initial_state = init;
    if (init.empty() && sys.system != System::mackey_glass) sys.sim.seed = seed;
}

void add_input(CLI::App* cmd, InputOptions& in, std::string& format) {
    cmd->add_option("input", in.path, "Series file, one value per row")->required();
    cmd->add_option("--format", format, "csv or whitespace")->capture_default_str();
    cmd->add_option("--input-dt", in.dt, "Sample interval (overrides the file header)");
}

void add_analysis(CLI::App* cmd, RunManifest& m, WindowFlags& wf) {
    cmd->add_option("--m", m.window.m, "Points per ordinal window")->capture_default_str();
    cmd->add_option("--tau", wf.tau, "Gap between window points (default 6)");
    cmd->add_option("--w", m.window.w, "Window slide")->capture_default_str();
    cmd->add_option("--ranking", wf.ranking, "Pattern display: chronological or amplitude")
        ->capture_default_str();
    cmd->add_option("--window-dim", wf.embed_dim, "Derive tau from embedding dimension M");
    cmd->add_option("--window-lag", wf.embed_lag, "Derive tau from embedding lag T");
    cmd->add_option("--m-prime", m.sub.m_prime, "Sub-series window points")->capture_default_str();
    cmd->add_option("--tau-prime", m.sub.tau_prime, "Sub-series window gap")->capture_default_str();
    cmd->add_option("--w-prime", m.sub.w_prime, "Sub-series window slide")->capture_default_str();
    cmd->add_option("--gap-fraction", m.levels.gap_fraction, "Level split threshold")
        ->capture_default_str();
    cmd->add_option("--max-levels", m.levels.max_levels, "Maximum entropy levels")
        ->capture_default_str();
}

void resolve_window(RunManifest& m, const WindowFlags& wf, int default_tau) {
    m.window.ranking = parse_ranking(wf.ranking);
    if (wf.embed_dim.has_value() != wf.embed_lag.has_value()) {
        throw ConfigError("--window-dim and --window-lag must be given together");
    }
    if (wf.embed_dim) {
        if (wf.tau) throw ConfigError("--tau conflicts with --window-dim/--window-lag");
        const auto derived = window_from_embedding({*wf.embed_dim, *wf.embed_lag}, m.window.m);
        m.window.tau = derived.tau;
    } else {
        m.window.tau = wf.tau.value_or(default_tau);
    }
}

void add_output(CLI::App* cmd, OutputFlags& o) {
    cmd->add_option("--out", o.out, "Output directory")->required();
    cmd->add_flag("--keyed", o.keyed, "Write into a subdirectory named by the manifest hash");
}

void report(const RunResult& r) {
    std::cout << r.out_dir.string() << '\n';
    for (const auto& f : r.files) std::cout << "  " << f << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ordinal Poincare sections: first return maps from ordinal partitions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    RunManifest m;
    SystemOptions sys;
    ParamFlags params;
    std::vector<double> init;
    std::uint64_t seed = 1;
    InputOptions input;
    std::string format = "csv";
    WindowFlags wf;
    OutputFlags out;
    std::string system_arg;
    std::vector<std::string> patterns;
    std::optional<int> level;
    std::string level_by = "h_wt";
    std::string by = "h_wt";
    std::string granularity = "symbol";
    std::string color = "none";
    std::optional<int> dim, lag;
    std::string manifest_path;

    auto* gen = app.add_subcommand("generate", "Integrate a test system and write its x series");
    gen->add_option("system", system_arg, "lorenz, rossler or mackey-glass")->required();
    add_simulation(gen, sys, params, init, seed);
    add_output(gen, out);

    auto* analyze = app.add_subcommand("analyze", "Symbolize a series and rank its partitions");
    add_input(analyze, input, format);
    add_analysis(analyze, m, wf);
    add_output(analyze, out);

    auto* frm = app.add_subcommand("frm", "First return maps from partitions or local maxima");
    add_input(frm, input, format);
    add_analysis(frm, m, wf);
    frm->add_option("--pattern", patterns, "Partition pattern, e.g. 4-3-2-1 (repeatable)");
    frm->add_option("--level", level, "All partitions of this entropy level");
    frm->add_flag("--top-level", m.frm.top_level, "All level-1 partitions");
    frm->add_option("--level-by", level_by, "h_w or h_wt")->capture_default_str();
    frm->add_flag("--maxima", m.frm.maxima, "Local-maxima return map");
    frm->add_flag("--sign-split", m.frm.sign_split, "Tag maxima by sign");
    add_output(frm, out);

    auto* levels = app.add_subcommand("levels", "Entropy level sequence and level network");
    add_input(levels, input, format);
    add_analysis(levels, m, wf);
    levels->add_option("--by", by, "h_w or h_wt")->capture_default_str();
    levels->add_option("--granularity", granularity, "symbol or entry")->capture_default_str();
    add_output(levels, out);

    auto* embed = app.add_subcommand("embed", "Delay-embedded point cloud with optional coloring");
    add_input(embed, input, format);
    add_analysis(embed, m, wf);
    embed->add_option("--dim", dim, "Embedding dimension M (default 3)");
    embed->add_option("--lag", lag, "Embedding lag T (default 9)");
    embed->add_option("--color", color, "none, pattern or level")->capture_default_str();
    embed->add_option("--by", by, "Level entropy for --color level")->capture_default_str();
    add_output(embed, out);

    auto* pipe = app.add_subcommand("pipeline", "Generate (or load) and run every stage");
    pipe->add_option("system", system_arg, "lorenz, rossler or mackey-glass");
    pipe->add_option("--input", input.path, "Analyze a file instead of generating");
    pipe->add_option("--format", format, "csv or whitespace")->capture_default_str();
    pipe->add_option("--input-dt", input.dt, "Sample interval for --input");
    add_simulation(pipe, sys, params, init, seed);
    add_analysis(pipe, m, wf);
    pipe->add_option("--dim", dim, "Embedding dimension M (default per system)");
    pipe->add_option("--lag", lag, "Embedding lag T (default per system)");
    pipe->add_option("--by", by, "Entropy used for levels")->capture_default_str();
    pipe->add_option("--out", out.out, "Output directory")->required();
    bool flat = false;
    pipe->add_flag("--flat", flat, "Write directly into --out instead of a keyed subdirectory");

    auto* replay = app.add_subcommand("replay", "Re-run a command from its manifest.json");
    replay->add_option("manifest", manifest_path, "Path to manifest.json")->required();
    add_output(replay, out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (replay->parsed()) {
            report(run(RunManifest::load(manifest_path), out.out, out.keyed));
            return 0;
        }

        auto finish_input = [&] {
            input.format = format == "whitespace" ? SeriesFormat::whitespace : SeriesFormat::csv;
            if (format != "csv" && format != "whitespace") {
                throw ConfigError("unknown format '" + format + "'");
            }
            m.input = input;
        };

        if (gen->parsed()) {
            m.command = Command::generate;
            sys.system = parse_system(system_arg);
            apply_params(sys, params, init, seed);
            m.system = sys;
        } else if (pipe->parsed()) {
            m.command = Command::pipeline;
            out.keyed = !flat;
            if (!system_arg.empty() == !input.path.empty()) {
                throw ConfigError("pipeline needs either a system or --input");
            }
            EmbeddingConfig emb;
            if (!system_arg.empty()) {
                sys.system = parse_system(system_arg);
                apply_params(sys, params, init, seed);
                m.system = sys;
                emb = EmbeddingConfig::for_system(sys.system);
            } else {
                finish_input();
            }
            if (dim) emb.dim = *dim;
            if (lag) emb.lag = *lag;
            m.embed.embedding = emb;
            m.embed.color = CloudColor::level;
            m.embed.by = parse_entropy_kind(by);
            m.level_network.by = m.embed.by;
            m.frm.top_level = true;
            m.frm.level_by = m.embed.by;
            m.frm.maxima = true;
            m.frm.sign_split = true;
            if (!wf.tau && !wf.embed_dim) {
                wf.embed_dim = emb.dim;
                wf.embed_lag = emb.lag;
            }
            resolve_window(m, wf, 6);
        } else {
            finish_input();
            resolve_window(m, wf, 6);
            if (analyze->parsed()) {
                m.command = Command::analyze;
            } else if (frm->parsed()) {
                m.command = Command::frm;
                m.frm.patterns = patterns;
                m.frm.level = level;
                m.frm.level_by = parse_entropy_kind(level_by);
            } else if (levels->parsed()) {
                m.command = Command::levels;
                m.level_network.by = parse_entropy_kind(by);
                m.level_network.granularity = parse_granularity(granularity);
            } else if (embed->parsed()) {
                m.command = Command::embed;
                m.embed.embedding.dim = dim.value_or(3);
                m.embed.embedding.lag = lag.value_or(9);
                if (color == "none") {
                    m.embed.color = CloudColor::none;
                } else if (color == "pattern") {
                    m.embed.color = CloudColor::pattern;
                } else if (color == "level") {
                    m.embed.color = CloudColor::level;
                } else {
                    throw ConfigError("unknown color '" + color + "'");
                }
                m.embed.by = parse_entropy_kind(by);
            }
        }
        report(run(m, out.out, out.keyed));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
