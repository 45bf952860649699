#include "swiptsim/execute.hpp"

#include <fstream>
#include <iostream>
#include <limits>
#include <optional>

#include "swiptsim/config.hpp"
#include "swiptsim/format.hpp"
#include "swiptsim/kernels.hpp"

namespace swiptsim {
namespace {

struct BoundColumns {
    double value = 0.0;
    double raw = 0.0;
    std::string label;
};

BoundColumns bound_columns(const SystemParams& p, Metric metric) {
    BoundColumns c;
    switch (metric) {
        case Metric::expected_harvest: {
            const double mean = expected_harvest(p);
            c = {mean, mean, "analytic"};
            break;
        }
        case Metric::power_outage: {
            const BoundResult b = power_outage_bound(p);
            c = {b.value, b.raw_value, std::string(to_string(b.bound_case))};
            break;
        }
        case Metric::transmission_outage: {
            if (p.xi == 1) {
                const BoundResult b = transmission_outage_bound(p);
                c = {b.value, b.raw_value, std::string(to_string(b.bound_case))};
            } else {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                c = {nan, nan, "unavailable"};
            }
            break;
        }
    }
    return c;
}

void run_single(const RunConfig& cfg, std::ostream& csv, std::ostream& summary) {
    const Estimate est =
        run_trials(cfg.params, cfg.metric, cfg.regime, cfg.trials, cfg.seed, cfg.threads);
    const BoundColumns bc = bound_columns(cfg.params, cfg.metric);

    std::string buf =
        "axis,axis_value,metric,regime,mean,std_error,trials,bound_value,bound_raw,"
        "case_label,seed\n";
    buf += "none,0,";
    buf += to_string(cfg.metric);
    buf += ',';
    buf += to_string(cfg.regime);
    buf += ',';
    append_double(buf, est.mean);
    buf += ',';
    append_double(buf, est.std_error);
    buf += ',';
    buf += std::to_string(est.trials);
    buf += ',';
    append_double(buf, bc.value);
    buf += ',';
    append_double(buf, bc.raw);
    buf += ',';
    buf += bc.label;
    buf += ',';
    buf += std::to_string(cfg.seed);
    buf += '\n';
    csv << buf;

    summary << to_string(cfg.metric) << " (" << to_string(cfg.regime)
            << "): mean=" << format_double(est.mean)
            << " std_error=" << format_double(est.std_error) << " trials=" << est.trials;
    if (bc.label == "analytic")
        summary << " analytic_mean=" << format_double(bc.value);
    else if (bc.label == "unavailable")
        summary << " bound=unavailable";
    else
        summary << " bound=" << format_double(bc.value) << " (" << bc.label << ")";
    summary << " kernels=" << kernels::active_kernels().name << "\n";
}

void run_sample(const RunConfig& cfg, std::ostream& csv, std::ostream& summary) {
    const SystemParams& p = cfg.params;
    std::optional<GinibreSpectrum> spectrum;
    if (!p.repulsion.is_poisson()) spectrum = build_spectrum(p.rho, p.radius);

    std::vector<PointPattern> patterns;
    patterns.reserve(static_cast<std::size_t>(cfg.trials));
    std::size_t total = 0;
    for (std::int64_t t = 0; t < cfg.trials; ++t) {
        Xoshiro256 rng = make_stream(cfg.seed, static_cast<std::uint64_t>(t));
        try {
            PointPattern pat = p.repulsion.is_poisson()
                                   ? sample_poisson(p.rho, p.radius, rng)
                                   : sample_point_process(*spectrum, p.repulsion, rng);
            total += pat.size();
            patterns.push_back(std::move(pat));
        } catch (const std::exception& e) {
            throw std::runtime_error("trial " + std::to_string(t) + ": " + e.what());
        }
    }
    write_patterns_csv(csv, patterns);
    summary << "sample: " << cfg.trials << " realizations, " << total
            << " points, mean count "
            << format_double(static_cast<double>(total) / static_cast<double>(cfg.trials))
            << ", window radius " << format_double(p.radius) << "\n";
}

void run_sweep(const RunConfig& cfg, std::ostream& csv, std::ostream& summary) {
    const SweepSpec& sp = *cfg.sweep_spec;
    const SweepGrid grid = sp.log_scale
                               ? SweepGrid::logarithmic(sp.axis, sp.lo, sp.hi, sp.steps)
                               : SweepGrid::linear(sp.axis, sp.lo, sp.hi, sp.steps);
    const SweepResult res =
        sweep(cfg.params, cfg.metric, cfg.regime, grid, cfg.trials, cfg.seed, cfg.threads);
    write_sweep_csv(csv, res);

    summary << "sweep " << to_string(sp.axis) << " [" << format_double(sp.lo) << ", "
            << format_double(sp.hi) << "] steps=" << sp.steps
            << (sp.log_scale ? " (log)" : "") << " metric=" << to_string(cfg.metric)
            << " regime=" << to_string(cfg.regime) << " trials/row=" << cfg.trials
            << " kernels=" << kernels::active_kernels().name << "\n";
    for (const SweepRow& row : res.rows) {
        summary << "  " << to_string(sp.axis) << "=" << format_double(row.axis_value)
                << " mean=" << format_double(row.estimate.mean)
                << " std_error=" << format_double(row.estimate.std_error);
        if (row.case_label == "analytic")
            summary << " analytic_mean=" << format_double(row.bound_value);
        else if (row.case_label == "unavailable")
            summary << " bound=unavailable";
        else
            summary << " bound=" << format_double(row.bound_value) << " (" << row.case_label
                    << ")";
        summary << "\n";
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    RunConfig cfg;
    try {
        cfg = parse_config(argc, argv);
    } catch (const CliError& e) {
        (e.exit_code == 0 ? std::cout : std::cerr) << e.what() << "\n";
        return e.exit_code;
    }

    try {
        kernels::select_kernels(cfg.kernel_set);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::ofstream file;
    std::ostream* csv = &std::cout;
    std::ostream* summary = &std::cerr;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path);
        if (!file) {
            std::cerr << "error: cannot open output file '" << cfg.output_path << "'\n";
            return 3;
        }
        csv = &file;
        summary = &std::cout;
    }

    try {
        switch (cfg.command) {
            case Command::sample: run_sample(cfg, *csv, *summary); break;
            case Command::sweep: run_sweep(cfg, *csv, *summary); break;
            default: run_single(cfg, *csv, *summary); break;
        }
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }

    if (file.is_open()) {
        file.close();
        if (!file) {
            std::cerr << "error: failed writing '" << cfg.output_path << "'\n";
            return 3;
        }
    }
    return 0;
}

}  // namespace swiptsim
