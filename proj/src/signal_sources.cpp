#include "ordsec/signal_sources.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>
#include <string>

#include "ordsec/errors.hpp"

namespace ordsec {

namespace {

using State3 = std::array<double, 3>;

template <class Rhs>
State3 rk4_step(const Rhs& rhs, const State3& s, double dt) {
    auto axpy = [](const State3& a, const State3& b, double h) {
        return State3{a[0] + h * b[0], a[1] + h * b[1], a[2] + h * b[2]};
    };
    const State3 k1 = rhs(s);
    const State3 k2 = rhs(axpy(s, k1, 0.5 * dt));
    const State3 k3 = rhs(axpy(s, k2, 0.5 * dt));
    const State3 k4 = rhs(axpy(s, k3, dt));
    State3 out;
    for (std::size_t i = 0; i < 3; ++i) {
        out[i] = s[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

State3 initial_state3(const SimulationConfig& cfg) {
    std::vector<double> init = cfg.initial_state;
    if (init.empty()) {
        if (!cfg.seed) throw ConfigError("either an initial state or a seed is required");
        init = seeded_initial_state(*cfg.seed, 3);
    }
    if (init.size() != 3) {
        throw ConfigError("initial state must have 3 components, got " +
                          std::to_string(init.size()));
    }
    return {init[0], init[1], init[2]};
}

TimeSeries make_output(const SimulationConfig& cfg) {
    TimeSeries out;
    out.dt = cfg.dt;
    const std::size_t first_kept = cfg.total_points - cfg.kept_points();
    out.origin_time = static_cast<double>(first_kept) * cfg.dt;
    out.samples.reserve(cfg.kept_points());
    return out;
}

template <class Rhs>
TimeSeries integrate3(const Rhs& rhs, const SimulationConfig& cfg) {
    cfg.validate();
    State3 s = initial_state3(cfg);
    TimeSeries out = make_output(cfg);
    const std::size_t first_kept = cfg.total_points - cfg.kept_points();
    for (std::size_t i = 0; i < cfg.total_points; ++i) {
        if (i > 0) {
            s = rk4_step(rhs, s, cfg.dt);
            if (!std::isfinite(s[0]) || !std::isfinite(s[1]) || !std::isfinite(s[2])) {
                throw DivergenceError(i);
            }
        }
        if (i >= first_kept) out.samples.push_back(s[0]);
    }
    return out;
}

bool parse_double(std::string_view text, double& value) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return false;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

std::vector<std::string_view> split_cells(std::string_view line, SeriesFormat format) {
    std::vector<std::string_view> cells;
    if (format == SeriesFormat::csv) {
        std::size_t start = 0;
        while (true) {
            const auto pos = line.find(',', start);
            cells.push_back(line.substr(start, pos - start));
            if (pos == std::string_view::npos) break;
            start = pos + 1;
        }
    } else {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            const std::size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i > start) cells.push_back(line.substr(start, i - start));
        }
    }
    return cells;
}

std::optional<double> header_dt(const std::vector<std::string_view>& cells) {
    for (auto cell : cells) {
        const auto pos = cell.find("dt=");
        if (pos == std::string_view::npos) continue;
        double value = 0.0;
        if (parse_double(cell.substr(pos + 3), value)) return value;
    }
    return std::nullopt;
}

}  // namespace

void SimulationConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
    if (total_points == 0) throw ConfigError("total_points must be positive");
    if (!(discard_fraction >= 0.0 && discard_fraction < 1.0)) {
        throw ConfigError("discard_fraction must lie in [0, 1)");
    }
}

std::size_t SimulationConfig::kept_points() const {
    // floor(N (1 - f)) == N - ceil(N f); N f is snapped to an integer when it
    // is one up to rounding, so 10^6 points at f = 0.9 keep exactly 10^5.
    double dropped = static_cast<double>(total_points) * discard_fraction;
    const double nearest = std::round(dropped);
    if (std::abs(dropped - nearest) <= 1e-9 * std::max(1.0, dropped)) dropped = nearest;
    return total_points - static_cast<std::size_t>(std::ceil(dropped));
}

System parse_system(std::string_view name) {
    if (name == "lorenz") return System::lorenz;
    if (name == "rossler") return System::rossler;
    if (name == "mackey-glass" || name == "mackey_glass") return System::mackey_glass;
    throw ConfigError("unknown system '" + std::string(name) +
                      "' (expected lorenz, rossler or mackey-glass)");
}

std::string_view system_name(System system) {
    switch (system) {
        case System::lorenz: return "lorenz";
        case System::rossler: return "rossler";
        case System::mackey_glass: return "mackey-glass";
    }
    return "unknown";
}

std::vector<double> seeded_initial_state(std::uint64_t seed, std::size_t dim) {
    std::mt19937_64 engine(seed);
    std::vector<double> out(dim);
    for (auto& v : out) {
        const double unit = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        v = 2.0 * unit - 1.0;
    }
    return out;
}

TimeSeries integrate_lorenz(const LorenzParams& p, const SimulationConfig& cfg) {
    return integrate3(
        [&p](const State3& s) {
            return State3{p.sigma * (s[1] - s[0]), s[0] * (p.rho - s[2]) - s[1],
                          s[0] * s[1] - p.beta * s[2]};
        },
        cfg);
}

TimeSeries integrate_rossler(const RosslerParams& p, const SimulationConfig& cfg) {
    return integrate3(
        [&p](const State3& s) {
            return State3{-s[1] - s[2], s[0] + p.alpha * s[1], p.beta + (s[0] - p.gamma) * s[2]};
        },
        cfg);
}

TimeSeries integrate_mackey_glass(const MackeyGlassParams& p, const SimulationConfig& cfg) {
    cfg.validate();
    if (!(p.delay > 0.0)) throw ConfigError("delay must be positive");
    const double ratio = p.delay / cfg.dt;
    const double steps_real = std::round(ratio);
    if (steps_real < 1.0 || std::abs(ratio - steps_real) > 1e-9 * std::max(1.0, ratio)) {
        throw ConfigError("delay " + std::to_string(p.delay) +
                          " is not a positive integer multiple of dt " + std::to_string(cfg.dt));
    }
    const auto delay_steps = static_cast<std::size_t>(steps_real);

    auto rhs = [&p](double x, double x_delayed) {
        return p.beta * x_delayed / (1.0 + std::pow(x_delayed, p.n)) - p.gamma * x;
    };

    // history[(i) % size] holds x at grid step i for the last delay_steps + 1 steps.
    const std::size_t ring = delay_steps + 1;
    std::vector<double> history(ring, p.history_value);
    auto at = [&](std::size_t step) { return history[step % ring]; };

    TimeSeries out = make_output(cfg);
    const std::size_t first_kept = cfg.total_points - cfg.kept_points();
    double x = p.history_value;
    const double dt = cfg.dt;
    for (std::size_t i = 0; i < cfg.total_points; ++i) {
        if (i > 0) {
            // Advancing from step n = i - 1. Steps before 0 read the constant history.
            const std::size_t n = i - 1;
            const double lag0 = n >= delay_steps ? at(n - delay_steps) : p.history_value;
            const double lag1 = n + 1 >= delay_steps ? at(n + 1 - delay_steps) : p.history_value;
            const double lag_half = 0.5 * (lag0 + lag1);
            const double k1 = rhs(x, lag0);
            const double k2 = rhs(x + 0.5 * dt * k1, lag_half);
            const double k3 = rhs(x + 0.5 * dt * k2, lag_half);
            const double k4 = rhs(x + dt * k3, lag1);
            x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (!std::isfinite(x)) throw DivergenceError(i);
        }
        history[i % ring] = x;
        if (i >= first_kept) out.samples.push_back(x);
    }
    return out;
}

TimeSeries parse_series(std::istream& in, SeriesFormat format, std::optional<double> dt) {
    TimeSeries out;
    std::optional<double> dt_from_header;
    std::string line;
    std::size_t row = 0;
    bool seen_data = false;
    while (std::getline(in, line)) {
        ++row;
        const auto cells = split_cells(line, format);
        const bool blank = cells.empty() || (cells.size() == 1 && cells[0].find_first_not_of(
                                                                    " \t\r") == std::string_view::npos);
        if (blank) continue;
        double value = 0.0;
        if (parse_double(cells[0], value)) {
            if (!std::isfinite(value)) throw ParseError("non-finite value", row);
            out.samples.push_back(value);
            seen_data = true;
            continue;
        }
        if (!seen_data && out.samples.empty() && row == 1) {
            dt_from_header = header_dt(cells);
            continue;
        }
        throw ParseError("non-numeric cell '" + std::string(cells[0]) + "'", row);
    }
    if (out.samples.size() < 2) throw LengthError("series too short", 2, out.samples.size());
    if (dt) {
        out.dt = *dt;
    } else if (dt_from_header) {
        out.dt = *dt_from_header;
    } else {
        out.dt = 1.0;
    }
    out.validate();
    return out;
}

TimeSeries load_series(const std::filesystem::path& path, SeriesFormat format,
                       std::optional<double> dt) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open input file '" + path.string() + "'");
    return parse_series(in, format, dt);
}

}  // namespace ordsec
