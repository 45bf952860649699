#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "swiptsim/monte_carlo.hpp"

namespace swiptsim {

enum class Command { expected_harvest, power_outage, transmission_outage, sample, sweep };
std::string_view to_string(Command c);

struct SweepSpec {
    SweepAxis axis = SweepAxis::rho;
    double lo = 0.0;
    double hi = 0.0;
    int steps = 1;
    bool log_scale = false;

    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

// Thrown for anything wrong with an invocation; exit_code is what the process
// should return (0 for --help, 2 for usage errors).
class CliError : public std::runtime_error {
public:
    CliError(int code, const std::string& message)
        : std::runtime_error(message), exit_code(code) {}
    int exit_code;
};

struct RunConfig {
    Command command = Command::expected_harvest;
    SystemParams params;
    Metric metric = Metric::expected_harvest;
    Regime regime = Regime::general;
    std::optional<SweepSpec> sweep_spec;
    std::int64_t trials = 100000;
    std::uint64_t seed = 42;
    int threads = 1;
    std::string kernel_set = "auto";
    std::string output_path;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Parses a full argv (argv[0] is the program name).  Precedence: command line
// over --config file over defaults.  All problems are collected and reported
// together in one CliError.
RunConfig parse_config(int argc, const char* const* argv);

// key=value lines loadable back through --config.  The command itself is
// positional-only and not included.
std::string dump_config(const RunConfig& cfg);

double dbm_to_watts(double dbm);
double parse_power(const std::string& text);      // W, mW, uW, nW, pW, kW or dBm
double parse_frequency(const std::string& text);  // Hz, kHz, MHz, GHz
double parse_rate(const std::string& text);       // bit/s: bare, bps, kbps, Mbps

}  // namespace swiptsim
