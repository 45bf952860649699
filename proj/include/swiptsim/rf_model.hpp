#pragma once

#include <string>
#include <vector>

#include "swiptsim/point_process.hpp"

namespace swiptsim {

// Everything a single simulated receiver scenario depends on: one dedicated
// access point at a known distance, a field of co-channel ambient
// transmitters scattered over a disk around the receiver, and a
// power-splitting receiver that routes a fraction eta of incoming RF to an
// energy harvester and the rest to the information decoder.
//
// All powers in watts, distances in meters, rates in bit/s.
struct SystemParams {
    double eta = 0.5;    // power split routed to harvesting, in [0, 1]
    double beta = 0.3;   // RF-to-DC conversion efficiency, in (0, 1]

    double p_a = 1.0;         // access point transmit power
    double g_a = 1.5;         // access point antenna gain
    double lambda_a = 0.167;  // access point carrier wavelength
    double d_a = 1.0;         // access point distance
    double h_a = 1.0;         // power fading gain on the information link
    bool friis_h_a = false;   // replace h_a with the free-space loss at d_a

    double p_s = 1.0;         // ambient transmitter power
    double g_s = 1.5;         // ambient transmitter antenna gain
    double lambda = 0.167;    // ambient carrier wavelength
    double rho = 0.1;         // ambient transmitter intensity
    RepulsionParam repulsion{};  // spatial repulsion of the ambient field
    double radius = 5.0;      // observation window radius
    double epsilon = 1e-3;    // path-loss regularizer (keeps the singularity at 0 finite)

    double g_h = 1.5;                   // receiver antenna gain
    double p_c = 1.584893192461114e-5;  // harvester activation threshold (-18 dBm)
    double sigma2 = 1e-12;              // antenna noise power (-90 dBm)
    double sigma_sp2 = 1e-12;           // signal-processing noise power (-90 dBm)
    double bandwidth = 1e4;             // downlink bandwidth, Hz
    double rate_min = 0.0;              // required downlink rate; 0 = power delivery only
    int xi = 1;                         // 1 if the ambient field lands in-band, else 0

    // Human-readable list of constraint violations; empty when consistent.
    std::vector<std::string> validate() const;
    // Throws std::invalid_argument carrying the full list.
    void validate_or_throw() const;

    double h_a_effective() const;

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

// Free-space received/transmitted power ratio g_t g_r (wavelength / 4 pi d)^2.
double friis_gain(double g_t, double g_r, double wavelength, double distance);

// Harvested power contributed by the dedicated access point alone.
double access_point_harvest(const SystemParams& p);

// p_s g_s g_h lambda^2 / (4 pi)^2: multiplying this by
// sum_k 1/(epsilon + r_k)^2 gives the ambient RF power crossing the antenna.
double ambient_pathloss_coefficient(const SystemParams& p);

// Ambient harvested power given the precomputed path-loss sum.
double ambient_harvest(const SystemParams& p, double pathloss_sum);

// Total harvested power (access point + ambient field) for a realization.
double total_harvest(const SystemParams& p, const PointPattern& pattern);

// In-band ambient power reaching the decoder branch, before the xi switch.
double decoder_interference(const SystemParams& p, double pathloss_sum);

// Shannon rate of the downlink under the power split, with the ambient field
// as co-channel interference when xi == 1.  Throws std::domain_error when
// every denominator term vanishes.
double downlink_rate(const SystemParams& p, double interference);

}  // namespace swiptsim
