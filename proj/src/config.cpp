#include "swiptsim/config.hpp"

#include <CLI11.hpp>

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <span>
#include <vector>

#include "swiptsim/format.hpp"

namespace swiptsim {
namespace {

constexpr double kSpeedOfLight = 2.998e8;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_full_double(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    const std::string tmp(s);
    char* end = nullptr;
    const double v = std::strtod(tmp.c_str(), &end);
    if (end != tmp.c_str() + tmp.size()) return false;
    out = v;
    return true;
}

bool parse_full_ll(std::string_view s, long long& out) {
    s = trim(s);
    if (s.empty()) return false;
    const std::string tmp(s);
    char* end = nullptr;
    const long long v = std::strtoll(tmp.c_str(), &end, 10);
    if (end != tmp.c_str() + tmp.size()) return false;
    out = v;
    return true;
}

bool parse_full_ull(std::string_view s, unsigned long long& out) {
    s = trim(s);
    if (s.empty() || s.front() == '-') return false;
    const std::string tmp(s);
    char* end = nullptr;
    const unsigned long long v = std::strtoull(tmp.c_str(), &end, 10);
    if (end != tmp.c_str() + tmp.size()) return false;
    out = v;
    return true;
}

struct Suffix {
    std::string_view text;
    double multiplier;
};

// Longest suffixes must come first so "mW" is tried before "W".
std::optional<double> parse_suffixed(std::string_view s, std::span<const Suffix> table) {
    s = trim(s);
    for (const Suffix& sfx : table) {
        if (s.size() > sfx.text.size() && s.ends_with(sfx.text)) {
            double v;
            if (parse_full_double(s.substr(0, s.size() - sfx.text.size()), v))
                return v * sfx.multiplier;
            return std::nullopt;
        }
    }
    double v;
    if (parse_full_double(s, v)) return v;
    return std::nullopt;
}

constexpr std::array<std::pair<std::string_view, Command>, 8> kCommands{{
    {"expected-harvest", Command::expected_harvest},
    {"expected_harvest", Command::expected_harvest},
    {"power-outage", Command::power_outage},
    {"power_outage", Command::power_outage},
    {"transmission-outage", Command::transmission_outage},
    {"transmission_outage", Command::transmission_outage},
    {"sample", Command::sample},
    {"sweep", Command::sweep},
}};

std::string usage_preamble() {
    return "usage: swiptsim <command> [options]\n"
           "commands:\n"
           "  expected-harvest     mean harvested power, Monte Carlo plus analytic value\n"
           "  power-outage         probability the harvester misses its activation threshold\n"
           "  transmission-outage  probability of missing the power or rate requirement\n"
           "  sample               dump raw transmitter point patterns as CSV\n"
           "  sweep                run a metric across a parameter grid\n";
}

}  // namespace

std::string_view to_string(Command c) {
    switch (c) {
        case Command::expected_harvest: return "expected-harvest";
        case Command::power_outage: return "power-outage";
        case Command::transmission_outage: return "transmission-outage";
        case Command::sample: return "sample";
        case Command::sweep: return "sweep";
    }
    return "unknown";
}

double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

double parse_power(const std::string& text) {
    const std::string_view s = trim(text);
    if (s.size() > 3 && s.ends_with("dBm")) {
        double v;
        if (parse_full_double(s.substr(0, s.size() - 3), v)) return dbm_to_watts(v);
    } else {
        static constexpr Suffix table[] = {{"kW", 1e3}, {"mW", 1e-3}, {"uW", 1e-6},
                                           {"nW", 1e-9}, {"pW", 1e-12}, {"W", 1.0}};
        if (const auto v = parse_suffixed(s, table)) return *v;
    }
    throw std::invalid_argument("cannot parse power '" + text +
                                "' (number with optional W, mW, uW, nW, pW, kW, or dBm)");
}

double parse_frequency(const std::string& text) {
    static constexpr Suffix table[] = {{"GHz", 1e9}, {"MHz", 1e6}, {"kHz", 1e3}, {"Hz", 1.0}};
    if (const auto v = parse_suffixed(text, table)) return *v;
    throw std::invalid_argument("cannot parse frequency '" + text +
                                "' (number with optional Hz, kHz, MHz, or GHz)");
}

double parse_rate(const std::string& text) {
    static constexpr Suffix table[] = {
        {"bit/s", 1.0}, {"Mbps", 1e6}, {"kbps", 1e3}, {"bps", 1.0}};
    if (const auto v = parse_suffixed(text, table)) return *v;
    throw std::invalid_argument("cannot parse rate '" + text +
                                "' (number with optional bit/s, bps, kbps, or Mbps)");
}

RunConfig parse_config(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

    std::optional<Command> command;
    if (!args.empty() && !args.front().starts_with('-')) {
        const std::string& name = args.front();
        for (const auto& [text, cmd] : kCommands)
            if (name == text) command = cmd;
        if (!command)
            throw CliError(2, "error: unknown command '" + name + "'\n" + usage_preamble());
        args.erase(args.begin());
    }

    // Re-join option/value pairs whose value starts with '-' ("--pc -18dBm"),
    // which would otherwise be read as a second option.
    std::vector<std::string> merged;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& tok = args[i];
        if (tok.starts_with("--") && tok.size() > 2 && tok.find('=') == std::string::npos &&
            i + 1 < args.size()) {
            const std::string& nxt = args[i + 1];
            if (nxt.size() >= 2 && nxt[0] == '-' &&
                (std::isdigit(static_cast<unsigned char>(nxt[1])) || nxt[1] == '.')) {
                merged.push_back(tok + "=" + nxt);
                ++i;
                continue;
            }
        }
        merged.push_back(tok);
    }

    CLI::App app{"SWIPT receiver simulator with an ambient RF transmitter field"};
    app.set_config("--config", "", "read options from a key=value file");
    app.allow_config_extras(false);  // typos in config files must not pass silently

    std::optional<std::string> s_eta, s_beta, s_pa, s_ga, s_lambda_a, s_freq_a, s_da, s_ha,
        s_ps, s_gs, s_lambda, s_freq, s_rho, s_alpha, s_radius, s_epsilon, s_gh, s_pc,
        s_sigma2, s_sigma_sp2, s_bandwidth, s_rate_min, s_xi, s_trials, s_seed, s_threads,
        s_kernels, s_regime, s_metric, s_axis, s_min, s_max, s_steps;
    bool friis_flag = false, log_flag = false;
    std::string output;

    app.add_option("--eta", s_eta, "harvesting power split, in [0, 1]");
    app.add_option("--beta", s_beta, "RF-to-DC conversion efficiency, in (0, 1]");
    app.add_option("--pa", s_pa, "access point transmit power (W, mW, uW, dBm)");
    app.add_option("--ga", s_ga, "access point antenna gain");
    app.add_option("--lambda-a", s_lambda_a, "access point wavelength, m");
    app.add_option("--freq-a", s_freq_a, "access point carrier frequency, alternative to --lambda-a");
    app.add_option("--da", s_da, "access point distance, m");
    app.add_option("--ha", s_ha, "information link power fading gain");
    app.add_flag("--friis-ha", friis_flag, "derive h_a from free-space loss at d_a");
    app.add_option("--ps", s_ps, "ambient transmitter power (W, mW, uW, dBm)");
    app.add_option("--gs", s_gs, "ambient transmitter antenna gain");
    app.add_option("--lambda", s_lambda, "ambient wavelength, m");
    app.add_option("--freq", s_freq, "ambient carrier frequency, alternative to --lambda");
    app.add_option("--rho", s_rho, "ambient transmitter intensity, 1/m^2");
    app.add_option("--alpha", s_alpha, "repulsion parameter: 0 or -1/j for integer j >= 1");
    app.add_option("--radius", s_radius, "observation window radius, m");
    app.add_option("--epsilon", s_epsilon, "path-loss regularizer, m");
    app.add_option("--gh", s_gh, "harvester antenna gain");
    app.add_option("--pc", s_pc, "harvester activation threshold (W, mW, uW, dBm)");
    app.add_option("--sigma2", s_sigma2, "antenna noise power (W or dBm)");
    app.add_option("--sigma-sp2", s_sigma_sp2, "signal processing noise power (W or dBm)");
    app.add_option("--bandwidth", s_bandwidth, "downlink bandwidth (Hz, kHz, MHz)");
    app.add_option("--rate-min", s_rate_min, "required downlink rate (bit/s, kbps, Mbps)");
    app.add_option("--xi", s_xi, "1 if the ambient field is in-band, else 0");
    app.add_option("--trials", s_trials, "Monte Carlo realizations");
    app.add_option("--seed", s_seed, "master random seed");
    app.add_option("--threads", s_threads, "worker threads (results do not depend on this)");
    app.add_option("--kernels", s_kernels, "compute kernels: auto, scalar, avx2");
    app.add_option("--regime", s_regime, "general or worst_case");
    app.add_option("--metric", s_metric,
                   "sweep metric: expected_harvest, power_outage, transmission_outage");
    app.add_option("--axis", s_axis, "sweep axis: rho, d_a, eta, alpha");
    app.add_option("--min", s_min, "sweep range start");
    app.add_option("--max", s_max, "sweep range end");
    app.add_option("--steps", s_steps, "sweep grid size");
    app.add_flag("--log", log_flag, "logarithmic sweep spacing");
    app.add_option("--output,-o", output, "write CSV here instead of stdout");

    std::vector<const char*> cargv;
    cargv.push_back("swiptsim");
    for (const std::string& m : merged) cargv.push_back(m.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp&) {
        throw CliError(0, usage_preamble() + "\n" + app.help());
    } catch (const CLI::ParseError& e) {
        throw CliError(2, std::string("error: ") + e.what());
    }

    if (!command)
        throw CliError(2, "error: missing command\n" + usage_preamble());

    RunConfig cfg;
    cfg.command = *command;
    SystemParams& p = cfg.params;
    std::vector<std::string> errors;
    auto fail = [&](std::string m) { errors.push_back(std::move(m)); };

    auto as_double = [&](const std::optional<std::string>& s, const char* name, double& dst) {
        if (!s) return;
        double v;
        if (parse_full_double(*s, v))
            dst = v;
        else
            fail(std::string("--") + name + ": '" + *s + "' is not a number");
    };
    auto as_power = [&](const std::optional<std::string>& s, const char* name, double& dst) {
        if (!s) return;
        try {
            dst = parse_power(*s);
        } catch (const std::exception& e) {
            fail(std::string("--") + name + ": " + e.what());
        }
    };

    as_double(s_eta, "eta", p.eta);
    as_double(s_beta, "beta", p.beta);
    as_power(s_pa, "pa", p.p_a);
    as_double(s_ga, "ga", p.g_a);
    as_double(s_da, "da", p.d_a);
    as_double(s_ha, "ha", p.h_a);
    p.friis_h_a = friis_flag;
    as_power(s_ps, "ps", p.p_s);
    as_double(s_gs, "gs", p.g_s);
    as_double(s_rho, "rho", p.rho);
    as_double(s_radius, "radius", p.radius);
    as_double(s_epsilon, "epsilon", p.epsilon);
    as_double(s_gh, "gh", p.g_h);
    as_power(s_pc, "pc", p.p_c);
    as_power(s_sigma2, "sigma2", p.sigma2);
    as_power(s_sigma_sp2, "sigma-sp2", p.sigma_sp2);

    auto wavelength_from = [&](const std::optional<std::string>& s_wl,
                               const std::optional<std::string>& s_fq, const char* wl_name,
                               const char* fq_name, double& dst) {
        if (s_wl && s_fq) {
            fail(std::string("give --") + wl_name + " or --" + fq_name + ", not both");
            return;
        }
        as_double(s_wl, wl_name, dst);
        if (s_fq) {
            try {
                const double f = parse_frequency(*s_fq);
                if (f > 0.0)
                    dst = kSpeedOfLight / f;
                else
                    fail(std::string("--") + fq_name + " must be positive");
            } catch (const std::exception& e) {
                fail(std::string("--") + fq_name + ": " + e.what());
            }
        }
    };
    wavelength_from(s_lambda, s_freq, "lambda", "freq", p.lambda);
    wavelength_from(s_lambda_a, s_freq_a, "lambda-a", "freq-a", p.lambda_a);

    if (s_bandwidth) {
        try {
            p.bandwidth = parse_frequency(*s_bandwidth);
        } catch (const std::exception& e) {
            fail(std::string("--bandwidth: ") + e.what());
        }
    }
    if (s_rate_min) {
        try {
            p.rate_min = parse_rate(*s_rate_min);
        } catch (const std::exception& e) {
            fail(std::string("--rate-min: ") + e.what());
        }
    }
    if (s_xi) {
        long long v;
        if (parse_full_ll(*s_xi, v) && (v == 0 || v == 1))
            p.xi = static_cast<int>(v);
        else
            fail("--xi: '" + *s_xi + "' must be 0 or 1");
    }
    if (s_alpha) {
        double v;
        if (!parse_full_double(*s_alpha, v)) {
            fail("--alpha: '" + *s_alpha + "' is not a number");
        } else {
            try {
                p.repulsion = RepulsionParam::from_alpha(v);
            } catch (const std::exception& e) {
                fail(std::string("--alpha: ") + e.what());
            }
        }
    }
    if (s_trials) {
        long long v;
        if (parse_full_ll(*s_trials, v) && v >= 1)
            cfg.trials = v;
        else
            fail("--trials: '" + *s_trials + "' must be a positive integer");
    }
    if (s_seed) {
        unsigned long long v;
        if (parse_full_ull(*s_seed, v))
            cfg.seed = v;
        else
            fail("--seed: '" + *s_seed + "' must be a non-negative integer");
    }
    if (s_threads) {
        long long v;
        if (parse_full_ll(*s_threads, v) && v >= 1 && v <= 4096)
            cfg.threads = static_cast<int>(v);
        else
            fail("--threads: '" + *s_threads + "' must be an integer in [1, 4096]");
    }
    if (s_kernels) {
        if (*s_kernels == "auto" || *s_kernels == "scalar" || *s_kernels == "avx2")
            cfg.kernel_set = *s_kernels;
        else
            fail("--kernels: '" + *s_kernels + "' is not one of auto, scalar, avx2");
    }
    if (s_regime) {
        if (*s_regime == "general")
            cfg.regime = Regime::general;
        else if (*s_regime == "worst_case" || *s_regime == "worst-case")
            cfg.regime = Regime::worst_case;
        else
            fail("--regime: '" + *s_regime + "' is not general or worst_case");
    }
    std::optional<Metric> metric_opt;
    if (s_metric) {
        if (*s_metric == "expected_harvest" || *s_metric == "expected-harvest")
            metric_opt = Metric::expected_harvest;
        else if (*s_metric == "power_outage" || *s_metric == "power-outage")
            metric_opt = Metric::power_outage;
        else if (*s_metric == "transmission_outage" || *s_metric == "transmission-outage")
            metric_opt = Metric::transmission_outage;
        else
            fail("--metric: '" + *s_metric +
                 "' is not one of expected_harvest, power_outage, transmission_outage");
    }
    cfg.output_path = output;

    const bool is_sweep = cfg.command == Command::sweep;
    if (!is_sweep) {
        if (s_axis) fail("--axis applies only to the sweep command");
        if (s_min) fail("--min applies only to the sweep command");
        if (s_max) fail("--max applies only to the sweep command");
        if (s_steps) fail("--steps applies only to the sweep command");
        if (log_flag) fail("--log applies only to the sweep command");
        if (s_metric) fail("--metric applies only to the sweep command");
    }
    switch (cfg.command) {
        case Command::expected_harvest: cfg.metric = Metric::expected_harvest; break;
        case Command::power_outage: cfg.metric = Metric::power_outage; break;
        case Command::transmission_outage: cfg.metric = Metric::transmission_outage; break;
        case Command::sample: break;
        case Command::sweep:
            if (metric_opt)
                cfg.metric = *metric_opt;
            else
                fail("sweep requires --metric");
            break;
    }
    if (cfg.command == Command::sample && s_regime)
        fail("sample does not take --regime");
    if (cfg.regime == Regime::worst_case && cfg.metric == Metric::expected_harvest &&
        (cfg.command == Command::expected_harvest || is_sweep))
        fail("the worst-case regime applies only to outage metrics");

    if (is_sweep) {
        SweepSpec spec;
        spec.log_scale = log_flag;
        bool shape_ok = true;
        if (!s_axis) {
            fail("sweep requires --axis");
            shape_ok = false;
        } else if (*s_axis == "rho") {
            spec.axis = SweepAxis::rho;
        } else if (*s_axis == "d_a" || *s_axis == "da") {
            spec.axis = SweepAxis::d_a;
        } else if (*s_axis == "eta") {
            spec.axis = SweepAxis::eta;
        } else if (*s_axis == "alpha") {
            spec.axis = SweepAxis::alpha;
        } else {
            fail("--axis: '" + *s_axis + "' is not one of rho, d_a, eta, alpha");
            shape_ok = false;
        }
        if (!s_min) {
            fail("sweep requires --min");
            shape_ok = false;
        } else if (!parse_full_double(*s_min, spec.lo)) {
            fail("--min: '" + *s_min + "' is not a number");
            shape_ok = false;
        }
        if (!s_max) {
            fail("sweep requires --max");
            shape_ok = false;
        } else if (!parse_full_double(*s_max, spec.hi)) {
            fail("--max: '" + *s_max + "' is not a number");
            shape_ok = false;
        }
        if (!s_steps) {
            fail("sweep requires --steps");
            shape_ok = false;
        } else {
            long long v;
            if (parse_full_ll(*s_steps, v) && v >= 1 && v <= 1'000'000) {
                spec.steps = static_cast<int>(v);
            } else {
                fail("--steps: '" + *s_steps + "' must be an integer in [1, 1000000]");
                shape_ok = false;
            }
        }
        if (shape_ok) {
            if (spec.steps > 1 && !(spec.hi > spec.lo))
                fail("sweep requires --max > --min when --steps > 1");
            if (spec.log_scale && !(spec.lo > 0.0))
                fail("logarithmic sweep requires --min > 0");
            cfg.sweep_spec = spec;
        }
    }

    for (std::string& e : cfg.params.validate()) errors.push_back(std::move(e));

    if (!errors.empty()) {
        std::string msg = "error: invalid invocation:";
        for (const std::string& e : errors) {
            msg += "\n  - ";
            msg += e;
        }
        throw CliError(2, msg);
    }
    return cfg;
}

std::string dump_config(const RunConfig& cfg) {
    const SystemParams& p = cfg.params;
    std::string o = "# swiptsim configuration (load with --config)\n";
    auto kv = [&](const char* k, const std::string& v) {
        o += k;
        o += '=';
        o += v;
        o += '\n';
    };
    auto kvd = [&](const char* k, double v) { kv(k, format_double(v)); };
    kvd("eta", p.eta);
    kvd("beta", p.beta);
    kvd("pa", p.p_a);
    kvd("ga", p.g_a);
    kvd("lambda-a", p.lambda_a);
    kvd("da", p.d_a);
    kvd("ha", p.h_a);
    kv("friis-ha", p.friis_h_a ? "true" : "false");
    kvd("ps", p.p_s);
    kvd("gs", p.g_s);
    kvd("lambda", p.lambda);
    kvd("rho", p.rho);
    kvd("alpha", p.repulsion.alpha());
    kvd("radius", p.radius);
    kvd("epsilon", p.epsilon);
    kvd("gh", p.g_h);
    kvd("pc", p.p_c);
    kvd("sigma2", p.sigma2);
    kvd("sigma-sp2", p.sigma_sp2);
    kvd("bandwidth", p.bandwidth);
    kvd("rate-min", p.rate_min);
    kv("xi", std::to_string(p.xi));
    if (cfg.command != Command::sample)
        kv("regime", std::string(to_string(cfg.regime)));
    kv("trials", std::to_string(cfg.trials));
    kv("seed", std::to_string(cfg.seed));
    kv("threads", std::to_string(cfg.threads));
    kv("kernels", cfg.kernel_set);
    if (!cfg.output_path.empty()) kv("output", cfg.output_path);
    if (cfg.sweep_spec) {
        kv("metric", std::string(to_string(cfg.metric)));
        kv("axis", std::string(to_string(cfg.sweep_spec->axis)));
        kvd("min", cfg.sweep_spec->lo);
        kvd("max", cfg.sweep_spec->hi);
        kv("steps", std::to_string(cfg.sweep_spec->steps));
        kv("log", cfg.sweep_spec->log_scale ? "true" : "false");
    }
    return o;
}

}  // namespace swiptsim
