#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "ordsec/time_series.hpp"

namespace ordsec {

struct LorenzParams {
    double sigma = 10.0;
    double rho = 28.0;
    double beta = 8.0 / 3.0;
};

struct RosslerParams {
    double alpha = 0.2;
    double beta = 0.2;
    double gamma = 9.0;
};

/// dx/dt = beta * x(t - delay) / (1 + x(t - delay)^n) - gamma * x.
/// The history on [-delay, 0] is the constant `history_value`.
struct MackeyGlassParams {
    double beta = 2.0;
    double gamma = 1.0;
    double delay = 2.0;
    double n = 9.65;
    double history_value = 0.5;
};

struct SimulationConfig {
    double dt = 0.01;
    std::size_t total_points = 1'000'000;
    /// Leading fraction of the trajectory dropped as transient; the tail is kept.
    double discard_fraction = 0.9;
    /// Empty means "draw from seed".
    std::vector<double> initial_state;
    std::optional<std::uint64_t> seed;

    void validate() const;
    std::size_t kept_points() const;
};

enum class System { lorenz, rossler, mackey_glass };

System parse_system(std::string_view name);
std::string_view system_name(System system);

/// Fixed-step classical RK4. Each returns the x component of the trajectory
/// (the first `total_points` grid values including the initial state, last
/// `kept_points()` retained). Bit-reproducible for identical inputs.
TimeSeries integrate_lorenz(const LorenzParams& params, const SimulationConfig& cfg);
TimeSeries integrate_rossler(const RosslerParams& params, const SimulationConfig& cfg);

/// RK4 on the delay equation. The delayed term is read from a grid history of
/// delay/dt steps; half-step stages interpolate linearly between neighbours.
TimeSeries integrate_mackey_glass(const MackeyGlassParams& params, const SimulationConfig& cfg);

/// Initial condition drawn uniformly from [-1, 1]^3 with a portable mapping of
/// mt19937_64 output.
std::vector<double> seeded_initial_state(std::uint64_t seed, std::size_t dim = 3);

enum class SeriesFormat { csv, whitespace };

/// One value per row. A leading non-numeric row is a header and may carry
/// `dt=<value>`; an explicit `dt` argument wins over the header.
TimeSeries parse_series(std::istream& in, SeriesFormat format, std::optional<double> dt = {});
TimeSeries load_series(const std::filesystem::path& path, SeriesFormat format,
                       std::optional<double> dt = {});

}  // namespace ordsec
