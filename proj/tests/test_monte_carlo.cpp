#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "swiptsim/monte_carlo.hpp"
#include "swiptsim/rng.hpp"

using namespace swiptsim;

namespace {

SystemParams far_access_point() {
    SystemParams p;
    p.d_a = 100.0;
    return p;
}

}  // namespace

TEST_SUITE("trial runner") {
    TEST_CASE("mean harvest matches the analytic value for both field models") {
        SystemParams p;
        // with a tiny guard distance the rare near-origin transmitter dominates
        // the variance; widen it so the mean settles at this trial count
        p.epsilon = 0.05;
        const double want = expected_harvest(p);
        SUBCASE("independent scatter") {
            const Estimate e = run_trials(p, Metric::expected_harvest, Regime::general,
                                          4000, 101);
            CHECK(e.trials == 4000);
            CHECK(e.std_error > 0.0);
            CHECK(std::fabs(e.mean - want) < 3.5 * e.std_error);
        }
        SUBCASE("repulsive field") {
            p.repulsion = RepulsionParam::inverse(1);
            const Estimate e = run_trials(p, Metric::expected_harvest, Regime::general,
                                          2500, 102);
            CHECK(std::fabs(e.mean - want) < 3.5 * e.std_error);
        }
    }

    TEST_CASE("repulsion does not shift the mean harvest") {
        SystemParams p;
        p.epsilon = 0.05;
        const Estimate poisson =
            run_trials(p, Metric::expected_harvest, Regime::general, 2500, 103);
        p.repulsion = RepulsionParam::inverse(2);
        const Estimate rep =
            run_trials(p, Metric::expected_harvest, Regime::general, 2500, 104);
        const double combined = std::sqrt(poisson.std_error * poisson.std_error +
                                          rep.std_error * rep.std_error);
        CHECK(std::fabs(poisson.mean - rep.mean) < 3.5 * combined);
    }

    TEST_CASE("worst-case power outage estimator is unbiased for the bound") {
        SystemParams p = far_access_point();
        SUBCASE("independent scatter") {
            const Estimate e =
                run_trials(p, Metric::power_outage, Regime::worst_case, 4000, 105);
            CHECK(std::fabs(e.mean - 0.30667919254656323) < 3.5 * e.std_error);
        }
        SUBCASE("repulsive field") {
            p.repulsion = RepulsionParam::inverse(1);
            const Estimate e =
                run_trials(p, Metric::power_outage, Regime::worst_case, 4000, 106);
            CHECK(std::fabs(e.mean - 0.17387543824484297) < 3.5 * e.std_error);
        }
    }

    TEST_CASE("worst-case transmission outage with an unreachable rate threshold") {
        // at rate_min = 20 the interference threshold is above what a single
        // transmitter can produce, so only the powering term remains
        SystemParams p = far_access_point();
        p.rate_min = 20.0;
        p.repulsion = RepulsionParam::inverse(1);
        const Estimate e =
            run_trials(p, Metric::transmission_outage, Regime::worst_case, 4000, 107);
        CHECK(std::fabs(e.mean - 0.17387543824484297) < 3.5 * e.std_error);
        const double bound = transmission_outage_bound(p).value;
        CHECK(e.mean < bound + 3.5 * e.std_error);
    }

    TEST_CASE("general outage is dominated by the worst-case surrogate") {
        SystemParams p = far_access_point();
        const Estimate general =
            run_trials(p, Metric::power_outage, Regime::general, 3000, 108);
        const Estimate worst =
            run_trials(p, Metric::power_outage, Regime::worst_case, 3000, 108);
        const double combined = std::sqrt(general.std_error * general.std_error +
                                          worst.std_error * worst.std_error);
        CHECK(general.mean <= worst.mean + 3.5 * combined);
    }

    TEST_CASE("impossible outages give an exact zero") {
        SystemParams p;  // dedicated link alone powers the device
        const Estimate power =
            run_trials(p, Metric::power_outage, Regime::worst_case, 500, 109);
        CHECK(power.mean == 0.0);
        CHECK(power.std_error == 0.0);

        p.rate_min = 1.0;  // threshold above the maximum single-transmitter power
        const Estimate trans =
            run_trials(p, Metric::transmission_outage, Regime::worst_case, 500, 110);
        CHECK(trans.mean == 0.0);
    }

    TEST_CASE("fully harvested split always misses a positive rate requirement") {
        SystemParams p;
        p.eta = 1.0;
        p.rate_min = 20.0;
        const Estimate e =
            run_trials(p, Metric::transmission_outage, Regime::worst_case, 300, 111);
        CHECK(e.mean == 1.0);
    }

    TEST_CASE("thread count never changes the result") {
        SystemParams p = far_access_point();
        p.repulsion = RepulsionParam::inverse(1);
        const Estimate one =
            run_trials(p, Metric::power_outage, Regime::worst_case, 600, 112, 1);
        const Estimate three =
            run_trials(p, Metric::power_outage, Regime::worst_case, 600, 112, 3);
        CHECK(one.mean == three.mean);
        CHECK(one.std_error == three.std_error);
        const Estimate again =
            run_trials(p, Metric::power_outage, Regime::worst_case, 600, 112, 1);
        CHECK(one.mean == again.mean);
    }

    TEST_CASE("argument and trial failures carry context") {
        SystemParams p;
        CHECK_THROWS_AS(run_trials(p, Metric::power_outage, Regime::general, 0, 1),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            run_trials(p, Metric::expected_harvest, Regime::worst_case, 10, 1),
            std::invalid_argument);
        SystemParams bad;
        bad.eta = 2.0;
        CHECK_THROWS_AS(run_trials(bad, Metric::power_outage, Regime::general, 10, 1),
                        std::invalid_argument);

        // degenerate decoder denominator inside a trial names the trial
        SystemParams deg;
        deg.eta = 1.0;
        deg.sigma_sp2 = 0.0;
        deg.xi = 0;
        deg.rate_min = 10.0;
        try {
            run_trials(deg, Metric::transmission_outage, Regime::general, 10, 1);
            FAIL("expected a wrapped trial error");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find("trial 0") != std::string::npos);
        }
    }
}

TEST_SUITE("sweep grid") {
    TEST_CASE("linear spacing with exact endpoints") {
        const SweepGrid g = SweepGrid::linear(SweepAxis::rho, 0.1, 0.5, 5);
        REQUIRE(g.values.size() == 5);
        CHECK(g.values.front() == 0.1);
        CHECK(g.values.back() == 0.5);
        for (std::size_t i = 1; i < g.values.size(); ++i)
            CHECK(oracle::rel_err(g.values[i] - g.values[i - 1], 0.1) < 1e-12);
    }

    TEST_CASE("logarithmic spacing with exact endpoints") {
        const SweepGrid g = SweepGrid::logarithmic(SweepAxis::rho, 0.01, 1.0, 5);
        REQUIRE(g.values.size() == 5);
        CHECK(g.values.front() == 0.01);
        CHECK(g.values.back() == 1.0);
        for (std::size_t i = 1; i < g.values.size(); ++i)
            CHECK(oracle::rel_err(g.values[i] / g.values[i - 1],
                                  3.1622776601683795) < 1e-12);
    }

    TEST_CASE("single step keeps the lower endpoint") {
        CHECK(SweepGrid::linear(SweepAxis::eta, 0.3, 0.9, 1).values ==
              std::vector<double>{0.3});
    }

    TEST_CASE("rejects degenerate ranges") {
        CHECK_THROWS_AS(SweepGrid::linear(SweepAxis::rho, 0.1, 0.5, 0),
                        std::invalid_argument);
        CHECK_THROWS_AS(SweepGrid::linear(SweepAxis::rho, 0.5, 0.1, 3),
                        std::invalid_argument);
        CHECK_THROWS_AS(SweepGrid::logarithmic(SweepAxis::rho, 0.0, 1.0, 3),
                        std::invalid_argument);
    }
}

TEST_SUITE("sweep") {
    TEST_CASE("harvest sweep carries the analytic mean, affine in the intensity") {
        SystemParams p;
        p.epsilon = 0.05;
        const SweepGrid g = SweepGrid::linear(SweepAxis::rho, 0.05, 0.15, 3);
        const SweepResult r =
            sweep(p, Metric::expected_harvest, Regime::general, g, 1500, 201);
        REQUIRE(r.rows.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) {
            const SweepRow& row = r.rows[i];
            CHECK(row.case_label == "analytic");
            CHECK(row.seed == derive_seed(201, i));
            CHECK(std::fabs(row.estimate.mean - row.bound_value) <
                  3.5 * row.estimate.std_error);
        }
        const double d1 = r.rows[1].bound_value - r.rows[0].bound_value;
        const double d2 = r.rows[2].bound_value - r.rows[1].bound_value;
        CHECK(oracle::rel_err(d1, d2) < 1e-12);
    }

    TEST_CASE("repulsion sweep orders the outage bound") {
        const SystemParams p = far_access_point();
        const SweepGrid g = SweepGrid::linear(SweepAxis::alpha, -1.0, 0.0, 3);
        const SweepResult r =
            sweep(p, Metric::power_outage, Regime::worst_case, g, 300, 202);
        REQUIRE(r.rows.size() == 3);
        CHECK(r.rows[0].case_label == "product_bound");
        CHECK(r.rows[0].bound_value < r.rows[1].bound_value);
        CHECK(r.rows[1].bound_value < r.rows[2].bound_value);
        CHECK(oracle::rel_err(r.rows[2].bound_value, 0.30667919254656323) < 1e-12);
    }

    TEST_CASE("out-of-band transmission rows mark the bound unavailable") {
        SystemParams p;
        p.xi = 0;
        p.rate_min = 100.0;
        const SweepGrid g = SweepGrid::linear(SweepAxis::rho, 0.05, 0.1, 2);
        const SweepResult r =
            sweep(p, Metric::transmission_outage, Regime::general, g, 200, 203);
        for (const SweepRow& row : r.rows) {
            CHECK(row.case_label == "unavailable");
            CHECK(std::isnan(row.bound_value));
        }
    }

    TEST_CASE("failures name the offending row") {
        SystemParams p;
        try {
            sweep(p, Metric::power_outage, Regime::general,
                  SweepGrid{SweepAxis::rho, {0.1, -0.2}}, 10, 1);
            FAIL("expected invalid_argument");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("sweep row 1") != std::string::npos);
        }
        try {
            sweep(p, Metric::power_outage, Regime::general,
                  SweepGrid{SweepAxis::alpha, {-1.0, -0.75}}, 10, 1);
            FAIL("expected invalid_argument");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("sweep row 1") != std::string::npos);
            CHECK(std::string(e.what()).find("alpha") != std::string::npos);
        }
        CHECK_THROWS_AS(sweep(p, Metric::power_outage, Regime::general,
                              SweepGrid{SweepAxis::rho, {}}, 10, 1),
                        std::invalid_argument);
    }

    TEST_CASE("csv layout") {
        SystemParams p;
        const SweepGrid g = SweepGrid::linear(SweepAxis::eta, 0.25, 0.75, 2);
        const SweepResult r =
            sweep(p, Metric::expected_harvest, Regime::general, g, 50, 204);
        std::ostringstream out;
        write_sweep_csv(out, r);
        std::istringstream in(out.str());
        std::string line;
        REQUIRE(std::getline(in, line));
        CHECK(line ==
              "axis,axis_value,metric,regime,mean,std_error,trials,bound_value,"
              "bound_raw,case_label,seed");
        int rows = 0;
        while (std::getline(in, line)) {
            ++rows;
            CHECK(line.rfind("eta,", 0) == 0);
            CHECK(std::count(line.begin(), line.end(), ',') == 10);
            CHECK(line.find("expected_harvest,general") != std::string::npos);
        }
        CHECK(rows == 2);
    }
}

TEST_SUITE("labels") {
    TEST_CASE("enum names") {
        CHECK(to_string(Metric::expected_harvest) == "expected_harvest");
        CHECK(to_string(Metric::power_outage) == "power_outage");
        CHECK(to_string(Metric::transmission_outage) == "transmission_outage");
        CHECK(to_string(Regime::general) == "general");
        CHECK(to_string(Regime::worst_case) == "worst_case");
        CHECK(to_string(SweepAxis::rho) == "rho");
        CHECK(to_string(SweepAxis::d_a) == "d_a");
        CHECK(to_string(SweepAxis::eta) == "eta");
        CHECK(to_string(SweepAxis::alpha) == "alpha");
    }
}
