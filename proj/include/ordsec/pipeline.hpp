#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ordsec/embedding.hpp"
#include "ordsec/level_transitions.hpp"
#include "ordsec/ordinal_encoding.hpp"
#include "ordsec/partition_ranking.hpp"
#include "ordsec/signal_sources.hpp"

// Orchestration behind the command-line tool. Every run is described by a
// RunManifest; executing the same manifest twice produces byte-identical
// files.
namespace ordsec::pipeline {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Command { generate, analyze, frm, levels, embed, pipeline };

Command parse_command(std::string_view name);
std::string_view command_name(Command command);

struct SystemOptions {
    System system = System::lorenz;
    LorenzParams lorenz;
    RosslerParams rossler;
    MackeyGlassParams mackey_glass;
    SimulationConfig sim;
};

TimeSeries generate_series(const SystemOptions& opts);

struct InputOptions {
    std::string path;
    SeriesFormat format = SeriesFormat::csv;
    std::optional<double> dt;
};

struct FrmOptions {
    /// Patterns in the display ranking of the window config.
    std::vector<std::string> patterns;
    std::optional<int> level;
    bool top_level = false;
    EntropyKind level_by = EntropyKind::weighted_transition;
    bool maxima = false;
    bool sign_split = false;

    bool empty() const { return patterns.empty() && !level && !top_level && !maxima; }
};

struct LevelsOptions {
    EntropyKind by = EntropyKind::weighted_transition;
    LevelGranularity granularity = LevelGranularity::per_symbol;
};

enum class CloudColor { none, pattern, level };

struct EmbedOptions {
    EmbeddingConfig embedding;
    CloudColor color = CloudColor::none;
    EntropyKind by = EntropyKind::weighted_transition;
};

struct RunManifest {
    Command command = Command::analyze;
    std::string tool_version = std::string(kToolVersion);
    /// Exactly one of `system` / `input` is set.
    std::optional<SystemOptions> system;
    std::optional<InputOptions> input;
    /// SHA-256 of the series bytes (the input file, or the generated CSV).
    /// When present on replay, the input file must match it.
    std::string input_sha256;
    WindowConfig window;
    SubSeriesConfig sub;
    LevelConfig levels;
    FrmOptions frm;
    LevelsOptions level_network;
    EmbedOptions embed;

    nlohmann::ordered_json to_json() const;
    static RunManifest from_json(const nlohmann::json& doc);
    static RunManifest load(const std::filesystem::path& path);
    /// Canonical serialization; the manifest hash is the SHA-256 of it.
    std::string dump() const;
    std::string hash() const;
};

std::string sha256_hex(std::string_view bytes);

struct RunResult {
    std::filesystem::path out_dir;
    std::vector<std::string> files;
    RunManifest manifest;
};

/// Executes the manifest and writes its outputs plus manifest.json into
/// `out` (or `out/<manifest hash prefix>` when keyed). Nothing is left
/// behind when a step fails.
RunResult run(RunManifest manifest, const std::filesystem::path& out, bool keyed = false);

}  // namespace ordsec::pipeline
