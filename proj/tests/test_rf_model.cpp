#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "oracle.hpp"
#include "swiptsim/rf_model.hpp"

using namespace swiptsim;

TEST_SUITE("free-space link") {
    TEST_CASE("reference value and scaling laws") {
        const double g = friis_gain(1.5, 1.5, 0.167, 1.0);
        CHECK(oracle::rel_err(g, 3.9737060024078787e-4) < 1e-14);
        CHECK(oracle::rel_err(friis_gain(1.5, 1.5, 0.167, 3.7), g / (3.7 * 3.7)) < 1e-14);
        CHECK(oracle::rel_err(friis_gain(1.5, 1.5, 2.0 * 0.167, 1.0), 4.0 * g) < 1e-14);
        CHECK(oracle::rel_err(friis_gain(3.0, 1.5, 0.167, 1.0), 2.0 * g) < 1e-14);
        CHECK_THROWS_AS(friis_gain(1.5, 1.5, 0.167, 0.0), std::domain_error);
        CHECK_THROWS_AS(friis_gain(1.5, 1.5, 0.167, -2.0), std::domain_error);
    }

    TEST_CASE("fading gain switch") {
        SystemParams p;
        CHECK(p.h_a_effective() == 1.0);
        p.h_a = 0.25;
        CHECK(p.h_a_effective() == 0.25);
        p.friis_h_a = true;
        p.d_a = 3.7;
        CHECK(oracle::rel_err(p.h_a_effective(),
                              friis_gain(p.g_a, p.g_h, p.lambda_a, 3.7)) < 1e-15);
    }
}

TEST_SUITE("harvested power") {
    TEST_CASE("dedicated link contribution") {
        SystemParams p;
        CHECK(oracle::rel_err(access_point_harvest(p), 5.960559003611818e-5) < 1e-14);
        p.eta = 1.0;
        CHECK(oracle::rel_err(access_point_harvest(p), 1.1921118007223636e-4) < 1e-14);
        p.eta = 0.0;
        CHECK(access_point_harvest(p) == 0.0);
    }

    TEST_CASE("ambient coefficient equals the unit-distance link gain") {
        SystemParams p;
        CHECK(oracle::rel_err(ambient_pathloss_coefficient(p),
                              friis_gain(p.g_s, p.g_h, p.lambda, 1.0)) < 1e-15);
    }

    TEST_CASE("two-point pattern against a hand-computed sum") {
        SystemParams p;
        PointPattern pat;
        pat.window_radius = p.radius;
        pat.add(0.3, 0.4);    // distance 0.5
        pat.add(-1.2, 0.9);   // distance 1.5
        CHECK(oracle::rel_err(total_harvest(p, pat), 3.2353320100656077e-4) < 1e-13);
        PointPattern empty;
        CHECK(oracle::rel_err(total_harvest(p, empty), access_point_harvest(p)) < 1e-15);
    }

    TEST_CASE("harvest and interference describe the same incident power") {
        SystemParams p;
        p.eta = 0.37;
        const double s = 4.427900316237368;
        const double harvested = ambient_harvest(p, s);
        const double interference = decoder_interference(p, s);
        // both are splits of the same antenna power: harvest/(eta beta) vs
        // interference/(1 - eta)
        CHECK(oracle::rel_err(harvested / (p.eta * p.beta),
                              interference / (1.0 - p.eta)) < 1e-13);
    }
}

TEST_SUITE("downlink rate") {
    TEST_CASE("reference values with and without in-band interference") {
        SystemParams p;
        CHECK(oracle::rel_err(downlink_rate(p, 3e-12), 366932.1213721902) < 1e-13);
        p.xi = 0;
        CHECK(oracle::rel_err(downlink_rate(p, 3e-12), 382781.7463793152) < 1e-13);
        CHECK(downlink_rate(p, 3e-12) == downlink_rate(p, 0.0));
    }

    TEST_CASE("monotone in the split and in the interference") {
        SystemParams p;
        const double base = downlink_rate(p, 3e-12);
        CHECK(downlink_rate(p, 4e-12) < base);
        p.eta = 0.6;
        CHECK(downlink_rate(p, 3e-12) < base);
    }

    TEST_CASE("fully harvested split has no decoder signal") {
        SystemParams p;
        p.eta = 1.0;
        // (1 - eta) sigma2 vanishes but sigma_sp2 keeps the denominator alive
        CHECK(downlink_rate(p, 3e-12) == 0.0);
        p.sigma_sp2 = 0.0;
        p.xi = 0;
        CHECK_THROWS_AS(downlink_rate(p, 3e-12), std::domain_error);
    }
}

TEST_SUITE("parameter validation") {
    TEST_CASE("defaults are consistent") {
        SystemParams p;
        CHECK(p.validate().empty());
        CHECK_NOTHROW(p.validate_or_throw());
    }

    TEST_CASE("every violation is reported, not just the first") {
        SystemParams p;
        p.eta = -0.1;
        p.beta = 0.0;
        p.p_a = -2.0;
        p.radius = 0.0;
        p.epsilon = 0.0;
        const auto errs = p.validate();
        CHECK(errs.size() >= 5);
        bool saw_eta = false, saw_radius = false;
        for (const auto& e : errs) {
            saw_eta = saw_eta || e.find("eta") != std::string::npos;
            saw_radius = saw_radius || e.find("radius") != std::string::npos;
        }
        CHECK(saw_eta);
        CHECK(saw_radius);
        CHECK_THROWS_AS(p.validate_or_throw(), std::invalid_argument);
    }

    TEST_CASE("rejects non-finite values and an oversized window") {
        SystemParams p;
        p.sigma2 = std::numeric_limits<double>::quiet_NaN();
        CHECK(!p.validate().empty());
        SystemParams q;
        q.rho = 1e6;
        q.radius = 5e3;  // pi rho R^2 far past the spectral budget
        CHECK(!q.validate().empty());
        SystemParams r;
        r.xi = 2;
        CHECK(!r.validate().empty());
    }
}
