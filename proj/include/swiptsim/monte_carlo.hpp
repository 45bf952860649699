#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "swiptsim/analytic_bounds.hpp"
#include "swiptsim/rf_model.hpp"

namespace swiptsim {

enum class Metric { expected_harvest, power_outage, transmission_outage };
enum class Regime {
    general,     // full ambient field feeds harvester and decoder
    worst_case,  // only the nearest ambient transmitter counts, matching the
                 // construction behind the outage bounds
};

std::string_view to_string(Metric m);
std::string_view to_string(Regime r);

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;
};

// Runs independent realizations and averages the per-trial value (harvested
// power, or a 0/1 outage indicator).  Per-trial randomness is a stream
// derived from (seed, trial index): any thread count produces bit-identical
// results, threads only partition the index range.  A failure inside a trial
// propagates with the trial index attached.
Estimate run_trials(const SystemParams& p, Metric metric, Regime regime,
                    std::int64_t trials, std::uint64_t seed, int threads = 1);

enum class SweepAxis { rho, d_a, eta, alpha };
std::string_view to_string(SweepAxis a);

struct SweepGrid {
    SweepAxis axis = SweepAxis::rho;
    std::vector<double> values;

    static SweepGrid linear(SweepAxis axis, double lo, double hi, int steps);
    static SweepGrid logarithmic(SweepAxis axis, double lo, double hi, int steps);
};

struct SweepRow {
    double axis_value = 0.0;
    Estimate estimate;
    // Analytic companion: the mean-harvest formula for the harvest metric,
    // the outage bound otherwise.  NaN with label "unavailable" when no
    // formula applies (out-of-band transmission runs).
    double bound_value = 0.0;
    double bound_raw = 0.0;
    std::string case_label;
    std::uint64_t seed = 0;
};

struct SweepResult {
    SweepAxis axis = SweepAxis::rho;
    Metric metric = Metric::expected_harvest;
    Regime regime = Regime::general;
    std::vector<SweepRow> rows;
};

// One run_trials per grid value, each with its own derived seed.  Parameter
// errors are reported with the offending row attached.
SweepResult sweep(const SystemParams& base, Metric metric, Regime regime,
                  const SweepGrid& grid, std::int64_t trials, std::uint64_t seed,
                  int threads = 1);

// Header: axis,axis_value,metric,regime,mean,std_error,trials,bound_value,
// bound_raw,case_label,seed
void write_sweep_csv(std::ostream& out, const SweepResult& result);

}  // namespace swiptsim
