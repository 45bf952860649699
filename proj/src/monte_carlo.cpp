#include "swiptsim/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "swiptsim/format.hpp"
#include "swiptsim/kernels.hpp"
#include "swiptsim/rng.hpp"

namespace swiptsim {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Everything shared by all trials of one run, precomputed once.
struct TrialEvaluator {
    SystemParams p;
    Metric metric;
    Regime regime;
    const kernels::KernelTable* kt = nullptr;
    std::optional<GinibreSpectrum> spectrum;  // only for repulsive sampling

    double coef = 0.0;     // ambient_pathloss_coefficient
    double pha = 0.0;      // access point harvest
    double deficit = 0.0;  // p_c - pha
    double gamma_eff2 = -1.0;  // squared void radius; < 0 when powering never fails
    double t = kInf;           // pre-split ambient power breaking the rate
    bool f_test = false;       // worst-case rate check compares f(nearest) to t
    bool rate0_fails = false;  // out-of-band: noise-only rate verdict

    TrialEvaluator(const SystemParams& params, Metric m, Regime r)
        : p(params), metric(m), regime(r), kt(&kernels::active_kernels()) {
        if (!p.repulsion.is_poisson())
            spectrum = build_spectrum(p.rho, p.radius);
        coef = ambient_pathloss_coefficient(p);
        pha = access_point_harvest(p);
        deficit = p.p_c - pha;
        if (regime == Regime::worst_case) {
            if (deficit > 0.0) {
                const double gamma = *activation_distance(p);
                const double r_eff = std::min(p.radius, gamma);
                gamma_eff2 = r_eff * r_eff;
            }
            if (metric == Metric::transmission_outage && p.rate_min > 0.0) {
                if (p.xi == 1) {
                    t = (p.eta >= 1.0) ? -kInf : transmission_threshold(p);
                    f_test = true;
                } else {
                    rate0_fails = downlink_rate(p, 0.0) < p.rate_min;
                }
            }
        }
    }

    double run(std::uint64_t seed, std::int64_t trial) const {
        Xoshiro256 rng = make_stream(seed, static_cast<std::uint64_t>(trial));
        const PointPattern pattern =
            p.repulsion.is_poisson()
                ? sample_poisson(p.rho, p.radius, rng)
                : sample_point_process(*spectrum, p.repulsion, rng);
        return regime == Regime::general ? evaluate_general(pattern)
                                         : evaluate_worst_case(pattern);
    }

    double evaluate_general(const PointPattern& pattern) const {
        const double sum =
            kt->pathloss_sum(pattern.x.data(), pattern.y.data(), pattern.size(), p.epsilon);
        const double harvest = pha + p.eta * p.beta * coef * sum;
        switch (metric) {
            case Metric::expected_harvest:
                return harvest;
            case Metric::power_outage:
                return harvest < p.p_c ? 1.0 : 0.0;
            case Metric::transmission_outage: {
                if (harvest < p.p_c) return 1.0;
                if (p.rate_min == 0.0) return 0.0;
                const double interference = (1.0 - p.eta) * coef * sum;
                return downlink_rate(p, interference) < p.rate_min ? 1.0 : 0.0;
            }
        }
        return 0.0;
    }

    double evaluate_worst_case(const PointPattern& pattern) const {
        const double nearest2 =
            kt->min_norm2(pattern.x.data(), pattern.y.data(), pattern.size());
        const bool unpowered = deficit > 0.0 && nearest2 > gamma_eff2;
        if (metric == Metric::power_outage || p.rate_min == 0.0)
            return unpowered ? 1.0 : 0.0;
        bool rate_fails;
        if (f_test) {
            const double d = p.epsilon + std::sqrt(nearest2);
            rate_fails = coef / (d * d) > t;  // empty pattern: f == 0
        } else {
            rate_fails = rate0_fails;
        }
        return (unpowered || rate_fails) ? 1.0 : 0.0;
    }
};

double run_one(const TrialEvaluator& ev, std::uint64_t seed, std::int64_t trial) {
    try {
        return ev.run(seed, trial);
    } catch (const std::exception& e) {
        throw std::runtime_error("trial " + std::to_string(trial) + ": " + e.what());
    }
}

Estimate summarize(const std::vector<double>& vals) {
    const std::int64_t n = static_cast<std::int64_t>(vals.size());
    double sum = 0.0, c = 0.0;
    for (double v : vals) {
        const double y = v - c;
        const double s = sum + y;
        c = (s - sum) - y;
        sum = s;
    }
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    c = 0.0;
    for (double v : vals) {
        const double d = v - mean;
        const double y = d * d - c;
        const double s = ss + y;
        c = (s - ss) - y;
        ss = s;
    }
    const double se =
        n > 1 ? std::sqrt(ss / (static_cast<double>(n - 1) * static_cast<double>(n))) : 0.0;
    return {mean, se, n};
}

}  // namespace

std::string_view to_string(Metric m) {
    switch (m) {
        case Metric::expected_harvest: return "expected_harvest";
        case Metric::power_outage: return "power_outage";
        case Metric::transmission_outage: return "transmission_outage";
    }
    return "unknown";
}

std::string_view to_string(Regime r) {
    return r == Regime::general ? "general" : "worst_case";
}

std::string_view to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::rho: return "rho";
        case SweepAxis::d_a: return "d_a";
        case SweepAxis::eta: return "eta";
        case SweepAxis::alpha: return "alpha";
    }
    return "unknown";
}

Estimate run_trials(const SystemParams& p, Metric metric, Regime regime,
                    std::int64_t trials, std::uint64_t seed, int threads) {
    p.validate_or_throw();
    if (trials <= 0)
        throw std::invalid_argument("trials must be positive");
    if (metric == Metric::expected_harvest && regime == Regime::worst_case)
        throw std::invalid_argument(
            "the worst-case regime defines outage indicators, not harvested power");

    const TrialEvaluator ev(p, metric, regime);
    std::vector<double> vals(static_cast<std::size_t>(trials));

    if (threads < 1) threads = 1;
    if (static_cast<std::int64_t>(threads) > trials)
        threads = static_cast<int>(trials);

    if (threads == 1) {
        for (std::int64_t t = 0; t < trials; ++t)
            vals[static_cast<std::size_t>(t)] = run_one(ev, seed, t);
        return summarize(vals);
    }

    constexpr std::int64_t kBlock = 256;
    std::atomic<std::int64_t> next_block{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker = [&] {
        for (;;) {
            const std::int64_t lo = next_block.fetch_add(1) * kBlock;
            if (lo >= trials || failed.load(std::memory_order_relaxed)) return;
            const std::int64_t hi = std::min(lo + kBlock, trials);
            try {
                for (std::int64_t t = lo; t < hi; ++t)
                    vals[static_cast<std::size_t>(t)] = run_one(ev, seed, t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);

    return summarize(vals);
}

SweepGrid SweepGrid::linear(SweepAxis axis, double lo, double hi, int steps) {
    if (steps < 1)
        throw std::invalid_argument("sweep needs at least one step");
    if (steps > 1 && !(hi > lo))
        throw std::invalid_argument("sweep range must be increasing");
    SweepGrid g{axis, {}};
    if (steps == 1) {
        g.values.push_back(lo);
        return g;
    }
    const double d = (hi - lo) / static_cast<double>(steps - 1);
    for (int i = 0; i < steps; ++i)
        g.values.push_back(i == steps - 1 ? hi : lo + d * static_cast<double>(i));
    return g;
}

SweepGrid SweepGrid::logarithmic(SweepAxis axis, double lo, double hi, int steps) {
    if (!(lo > 0.0))
        throw std::invalid_argument("logarithmic sweep requires positive endpoints");
    if (steps < 1)
        throw std::invalid_argument("sweep needs at least one step");
    if (steps > 1 && !(hi > lo))
        throw std::invalid_argument("sweep range must be increasing");
    SweepGrid g{axis, {}};
    if (steps == 1) {
        g.values.push_back(lo);
        return g;
    }
    const double llo = std::log(lo);
    const double d = (std::log(hi) - llo) / static_cast<double>(steps - 1);
    for (int i = 0; i < steps; ++i) {
        if (i == 0)
            g.values.push_back(lo);
        else if (i == steps - 1)
            g.values.push_back(hi);
        else
            g.values.push_back(std::exp(llo + d * static_cast<double>(i)));
    }
    return g;
}

SweepResult sweep(const SystemParams& base, Metric metric, Regime regime,
                  const SweepGrid& grid, std::int64_t trials, std::uint64_t seed,
                  int threads) {
    if (grid.values.empty())
        throw std::invalid_argument("sweep grid is empty");
    SweepResult result{grid.axis, metric, regime, {}};
    result.rows.reserve(grid.values.size());
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        const double v = grid.values[i];
        const std::string where = "sweep row " + std::to_string(i) + " (" +
                                  std::string(to_string(grid.axis)) + " = " +
                                  format_double(v) + "): ";
        SystemParams q = base;
        try {
            switch (grid.axis) {
                case SweepAxis::rho: q.rho = v; break;
                case SweepAxis::d_a: q.d_a = v; break;
                case SweepAxis::eta: q.eta = v; break;
                case SweepAxis::alpha: q.repulsion = RepulsionParam::from_alpha(v); break;
            }
            q.validate_or_throw();
        } catch (const std::exception& e) {
            throw std::invalid_argument(where + e.what());
        }

        SweepRow row;
        row.axis_value = v;
        row.seed = derive_seed(seed, static_cast<std::uint64_t>(i));
        try {
            row.estimate = run_trials(q, metric, regime, trials, row.seed, threads);
            switch (metric) {
                case Metric::expected_harvest: {
                    const double mean = expected_harvest(q);
                    row.bound_value = mean;
                    row.bound_raw = mean;
                    row.case_label = "analytic";
                    break;
                }
                case Metric::power_outage: {
                    const BoundResult b = power_outage_bound(q);
                    row.bound_value = b.value;
                    row.bound_raw = b.raw_value;
                    row.case_label = std::string(to_string(b.bound_case));
                    break;
                }
                case Metric::transmission_outage: {
                    if (q.xi == 1) {
                        const BoundResult b = transmission_outage_bound(q);
                        row.bound_value = b.value;
                        row.bound_raw = b.raw_value;
                        row.case_label = std::string(to_string(b.bound_case));
                    } else {
                        row.bound_value = std::numeric_limits<double>::quiet_NaN();
                        row.bound_raw = std::numeric_limits<double>::quiet_NaN();
                        row.case_label = "unavailable";
                    }
                    break;
                }
            }
        } catch (const std::domain_error& e) {
            throw std::domain_error(where + e.what());
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(where + e.what());
        } catch (const std::runtime_error& e) {
            throw std::runtime_error(where + e.what());
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    std::string buf =
        "axis,axis_value,metric,regime,mean,std_error,trials,bound_value,bound_raw,"
        "case_label,seed\n";
    for (const SweepRow& row : result.rows) {
        buf += to_string(result.axis);
        buf += ',';
        append_double(buf, row.axis_value);
        buf += ',';
        buf += to_string(result.metric);
        buf += ',';
        buf += to_string(result.regime);
        buf += ',';
        append_double(buf, row.estimate.mean);
        buf += ',';
        append_double(buf, row.estimate.std_error);
        buf += ',';
        buf += std::to_string(row.estimate.trials);
        buf += ',';
        append_double(buf, row.bound_value);
        buf += ',';
        append_double(buf, row.bound_raw);
        buf += ',';
        buf += row.case_label;
        buf += ',';
        buf += std::to_string(row.seed);
        buf += '\n';
    }
    out << buf;
}

}  // namespace swiptsim
