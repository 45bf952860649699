#pragma once

#include <optional>
#include <string_view>

#include "swiptsim/rf_model.hpp"

namespace swiptsim {

// Which branch of the outage analysis produced a bound.
enum class BoundCase {
    zero_by_theorem,      // outage impossible; bound is exactly 0
    product_bound,        // avoidance-probability product only
    markov_only,          // mean-power tail term only
    product_plus_markov,  // product plus tail term
    trivial_one,          // no informative bound; 1
};

std::string_view to_string(BoundCase c);

// value is raw_value clamped to [0, 1]; raw_value keeps the unclamped sum so
// loose regimes stay visible in sweep output.
struct BoundResult {
    double value = 0.0;
    double raw_value = 0.0;
    BoundCase bound_case = BoundCase::trivial_one;
};

// epsilon / (R + epsilon) + ln((R + epsilon) / epsilon) - 1, the radial
// integral of the regularized path loss over the disk.  Mean ambient power
// collected by the antenna is 2 pi rho * ambient_pathloss_coefficient * this.
double pathloss_disk_integral(double radius, double epsilon);

// Mean harvested power: access point term plus the ambient-field mean.  Does
// not depend on the repulsion parameter (Campbell's formula only sees the
// intensity).
double expected_harvest(const SystemParams& p);
double expected_harvest_ambient_only(const SystemParams& p);

// Wideband log approximation of the ambient mean, rho eta beta p_s g_s g_h
// lambda^2 ln(R / epsilon) / (8 pi); close to the exact value when
// epsilon << R.
double expected_harvest_log_approx(const SystemParams& p);

// Distance inside which a single ambient transmitter alone pushes the
// harvester past its activation threshold.  Empty when the access point
// already powers the device by itself (p_c <= access point harvest).
std::optional<double> activation_distance(const SystemParams& p);

// Upper bound on the probability that harvested power stays below p_c.
// Worst case keeps only the nearest ambient transmitter, so the bound is the
// probability that the disk of radius min(R, activation distance) is empty,
// evaluated through the eigenvalue product of the repulsion model.
BoundResult power_outage_bound(const SystemParams& p);

// Interference level T at which the downlink rate exactly meets rate_min;
// above it the rate drops below requirement.  +infinity when rate_min == 0.
// Throws std::domain_error when eta == 1 with rate_min > 0 (no decoder
// branch, the rate requirement can never be met).
double transmission_threshold(const SystemParams& p);

// Upper bound on the probability that the device is unpowered or underserved:
// avoidance product (when the activation distance exists) plus a Markov tail
// on the mean ambient power.  Requires xi == 1; throws std::domain_error
// otherwise (out-of-band interference invalidates the derivation).
BoundResult transmission_outage_bound(const SystemParams& p);

}  // namespace swiptsim
