#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "ordsec/errors.hpp"
#include "ordsec/pipeline.hpp"

namespace ordsec::pipeline {

using nlohmann::json;
using nlohmann::ordered_json;

Command parse_command(std::string_view name) {
    if (name == "generate") return Command::generate;
    if (name == "analyze") return Command::analyze;
    if (name == "frm") return Command::frm;
    if (name == "levels") return Command::levels;
    if (name == "embed") return Command::embed;
    if (name == "pipeline") return Command::pipeline;
    throw ConfigError("unknown command '" + std::string(name) + "'");
}

std::string_view command_name(Command command) {
    switch (command) {
        case Command::generate: return "generate";
        case Command::analyze: return "analyze";
        case Command::frm: return "frm";
        case Command::levels: return "levels";
        case Command::embed: return "embed";
        case Command::pipeline: return "pipeline";
    }
    return "unknown";
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 computation failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

namespace {

bool uses_analysis(Command c) { return c != Command::generate; }
bool uses_frm(Command c) { return c == Command::frm || c == Command::pipeline; }
bool uses_levels(Command c) { return c == Command::levels || c == Command::pipeline; }
bool uses_embed(Command c) { return c == Command::embed || c == Command::pipeline; }

std::string_view format_name(SeriesFormat f) { return f == SeriesFormat::csv ? "csv" : "whitespace"; }

SeriesFormat parse_format(std::string_view name) {
    if (name == "csv") return SeriesFormat::csv;
    if (name == "whitespace") return SeriesFormat::whitespace;
    throw ConfigError("unknown series format '" + std::string(name) + "'");
}

std::string_view color_name(CloudColor c) {
    switch (c) {
        case CloudColor::none: return "none";
        case CloudColor::pattern: return "pattern";
        case CloudColor::level: return "level";
    }
    return "none";
}

CloudColor parse_color(std::string_view name) {
    if (name == "none") return CloudColor::none;
    if (name == "pattern") return CloudColor::pattern;
    if (name == "level") return CloudColor::level;
    throw ConfigError("unknown color '" + std::string(name) + "'");
}

ordered_json system_to_json(const SystemOptions& s) {
    ordered_json j;
    j["kind"] = "system";
    j["system"] = system_name(s.system);
    ordered_json params;
    switch (s.system) {
        case System::lorenz:
            params["sigma"] = s.lorenz.sigma;
            params["rho"] = s.lorenz.rho;
            params["beta"] = s.lorenz.beta;
            break;
        case System::rossler:
            params["alpha"] = s.rossler.alpha;
            params["beta"] = s.rossler.beta;
            params["gamma"] = s.rossler.gamma;
            break;
        case System::mackey_glass:
            params["beta"] = s.mackey_glass.beta;
            params["gamma"] = s.mackey_glass.gamma;
            params["delay"] = s.mackey_glass.delay;
            params["n"] = s.mackey_glass.n;
            params["history_value"] = s.mackey_glass.history_value;
            break;
    }
    j["params"] = params;
    ordered_json sim;
    sim["dt"] = s.sim.dt;
    sim["total_points"] = s.sim.total_points;
    sim["discard_fraction"] = s.sim.discard_fraction;
    sim["initial_state"] = s.sim.initial_state;
    sim["seed"] = s.sim.seed ? json(*s.sim.seed) : json(nullptr);
    j["simulation"] = sim;
    return j;
}

SystemOptions system_from_json(const json& j) {
    SystemOptions s;
    s.system = parse_system(j.at("system").get<std::string>());
    const auto& p = j.at("params");
    switch (s.system) {
        case System::lorenz:
            s.lorenz = {p.at("sigma"), p.at("rho"), p.at("beta")};
            break;
        case System::rossler:
            s.rossler = {p.at("alpha"), p.at("beta"), p.at("gamma")};
            break;
        case System::mackey_glass:
            s.mackey_glass = {p.at("beta"), p.at("gamma"), p.at("delay"), p.at("n"),
                              p.at("history_value")};
            break;
    }
    const auto& sim = j.at("simulation");
    s.sim.dt = sim.at("dt");
    s.sim.total_points = sim.at("total_points");
    s.sim.discard_fraction = sim.at("discard_fraction");
    s.sim.initial_state = sim.at("initial_state").get<std::vector<double>>();
    if (!sim.at("seed").is_null()) s.sim.seed = sim.at("seed").get<std::uint64_t>();
    return s;
}

}  // namespace

ordered_json RunManifest::to_json() const {
    ordered_json j;
    j["tool"] = "ordsec";
    j["version"] = tool_version;
    j["command"] = command_name(command);
    if (system) {
        j["source"] = system_to_json(*system);
    } else if (input) {
        ordered_json src;
        src["kind"] = "file";
        src["path"] = input->path;
        src["format"] = format_name(input->format);
        src["dt"] = input->dt ? json(*input->dt) : json(nullptr);
        j["source"] = src;
    }
    j["input_sha256"] = input_sha256;
    if (uses_analysis(command)) {
        j["window"] = {{"m", window.m},
                       {"tau", window.tau},
                       {"w", window.w},
                       {"ranking", ranking_name(window.ranking)}};
        j["subseries"] = {{"m_prime", sub.m_prime},
                          {"tau_prime", sub.tau_prime},
                          {"w_prime", sub.w_prime}};
        j["levels"] = {{"gap_fraction", levels.gap_fraction}, {"max_levels", levels.max_levels}};
    }
    if (uses_frm(command)) {
        ordered_json f;
        f["patterns"] = frm.patterns;
        f["level"] = frm.level ? json(*frm.level) : json(nullptr);
        f["top_level"] = frm.top_level;
        f["level_by"] = entropy_kind_name(frm.level_by);
        f["maxima"] = frm.maxima;
        f["sign_split"] = frm.sign_split;
        j["frm"] = f;
    }
    if (uses_levels(command)) {
        j["level_network"] = {{"by", entropy_kind_name(level_network.by)},
                              {"granularity", granularity_name(level_network.granularity)}};
    }
    if (uses_embed(command)) {
        j["embedding"] = {{"dim", embed.embedding.dim},
                          {"lag", embed.embedding.lag},
                          {"color", color_name(embed.color)},
                          {"by", entropy_kind_name(embed.by)}};
    }
    return j;
}

RunManifest RunManifest::from_json(const json& j) {
    try {
        if (j.value("tool", "") != "ordsec") throw ConfigError("not an ordsec run manifest");
        RunManifest m;
        m.tool_version = j.at("version").get<std::string>();
        m.command = parse_command(j.at("command").get<std::string>());
        const auto& src = j.at("source");
        const auto kind = src.at("kind").get<std::string>();
        if (kind == "system") {
            m.system = system_from_json(src);
        } else if (kind == "file") {
            InputOptions in;
            in.path = src.at("path").get<std::string>();
            in.format = parse_format(src.at("format").get<std::string>());
            if (!src.at("dt").is_null()) in.dt = src.at("dt").get<double>();
            m.input = in;
        } else {
            throw ConfigError("unknown source kind '" + kind + "'");
        }
        m.input_sha256 = j.value("input_sha256", "");
        if (j.contains("window")) {
            const auto& w = j["window"];
            m.window.m = w.at("m");
            m.window.tau = w.at("tau");
            m.window.w = w.at("w");
            m.window.ranking = parse_ranking(w.at("ranking").get<std::string>());
        }
        if (j.contains("subseries")) {
            const auto& s = j["subseries"];
            m.sub = {s.at("m_prime"), s.at("tau_prime"), s.at("w_prime")};
        }
        if (j.contains("levels")) {
            m.levels = {j["levels"].at("gap_fraction"), j["levels"].at("max_levels")};
        }
        if (j.contains("frm")) {
            const auto& f = j["frm"];
            m.frm.patterns = f.at("patterns").get<std::vector<std::string>>();
            if (!f.at("level").is_null()) m.frm.level = f.at("level").get<int>();
            m.frm.top_level = f.at("top_level");
            m.frm.level_by = parse_entropy_kind(f.at("level_by").get<std::string>());
            m.frm.maxima = f.at("maxima");
            m.frm.sign_split = f.at("sign_split");
        }
        if (j.contains("level_network")) {
            const auto& l = j["level_network"];
            m.level_network.by = parse_entropy_kind(l.at("by").get<std::string>());
            m.level_network.granularity = parse_granularity(l.at("granularity").get<std::string>());
        }
        if (j.contains("embedding")) {
            const auto& e = j["embedding"];
            m.embed.embedding = {e.at("dim"), e.at("lag")};
            m.embed.color = parse_color(e.at("color").get<std::string>());
            m.embed.by = parse_entropy_kind(e.at("by").get<std::string>());
        }
        return m;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed run manifest: ") + e.what());
    }
}

RunManifest RunManifest::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open manifest '" + path.string() + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("cannot parse manifest '" + path.string() + "': " + e.what());
    }
    return from_json(doc);
}

std::string RunManifest::dump() const { return to_json().dump(2); }

std::string RunManifest::hash() const { return sha256_hex(dump()); }

}  // namespace ordsec::pipeline
