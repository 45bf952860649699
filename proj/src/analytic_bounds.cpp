#include "swiptsim/analytic_bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "swiptsim/special_math.hpp"

namespace swiptsim {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = 0.6931471805599453;
constexpr double kInf = std::numeric_limits<double>::infinity();

// ln of the probability that no point of the repulsion model falls in a disk
// of scaled area a = pi rho r^2.  Independent scatter gives -a; the -1/j
// model gives j * sum_n ln(1 - lambda_n(a) / j).  Truncated eigenvalues are
// folded back in through their trace, which restores the exact j -> infinity
// limit and costs nothing for small j.
double log_avoidance(double a, RepulsionParam rep) {
    if (!(a > 0.0)) return 0.0;
    if (rep.is_poisson()) return -a;
    // exp of anything at or below -745 is 0 in double precision, and the
    // repulsive value is always below the independent one, so skip the
    // eigenvalue series once it cannot matter.
    if (a > 750.0) return -a;
    const double j = static_cast<double>(rep.j);
    double log_sum = 0.0;
    double trace = 0.0;
    for (int n = 0;; ++n) {
        const double lam = regularized_gamma_p(n, a);
        if (lam < GinibreSpectrum::kTruncation) break;
        trace += lam;
        log_sum += (rep.j == 1) ? log_regularized_gamma_q(n, a) : std::log1p(-lam / j);
    }
    return j * log_sum - (a - trace);
}

// Mean in-band ambient power at the antenna, before any splitting or
// conversion; the Markov numerators all reduce to this.
double mean_ambient_antenna_power(const SystemParams& p) {
    return 2.0 * kPi * p.rho * ambient_pathloss_coefficient(p) *
           pathloss_disk_integral(p.radius, p.epsilon);
}

}  // namespace

std::string_view to_string(BoundCase c) {
    switch (c) {
        case BoundCase::zero_by_theorem: return "zero_by_theorem";
        case BoundCase::product_bound: return "product_bound";
        case BoundCase::markov_only: return "markov_only";
        case BoundCase::product_plus_markov: return "product_plus_markov";
        case BoundCase::trivial_one: return "trivial_one";
    }
    return "unknown";
}

double pathloss_disk_integral(double radius, double epsilon) {
    if (!(radius > 0.0))
        throw std::domain_error("window radius must be positive");
    if (!(epsilon > 0.0))
        throw std::domain_error("path-loss regularizer must be positive");
    return epsilon / (radius + epsilon) + std::log1p(radius / epsilon) - 1.0;
}

double expected_harvest_ambient_only(const SystemParams& p) {
    return p.eta * p.beta * mean_ambient_antenna_power(p);
}

double expected_harvest(const SystemParams& p) {
    return access_point_harvest(p) + expected_harvest_ambient_only(p);
}

double expected_harvest_log_approx(const SystemParams& p) {
    return p.rho * p.eta * p.beta * p.p_s * p.g_s * p.g_h * p.lambda * p.lambda /
           (8.0 * kPi) * std::log(p.radius / p.epsilon);
}

std::optional<double> activation_distance(const SystemParams& p) {
    const double deficit = p.p_c - access_point_harvest(p);
    if (deficit <= 0.0) return std::nullopt;
    const double num = p.eta * p.beta * p.p_s * p.g_s * p.g_h;
    return p.lambda / (4.0 * kPi) * std::sqrt(num / deficit);
}

BoundResult power_outage_bound(const SystemParams& p) {
    const auto gamma = activation_distance(p);
    if (!gamma)
        return {0.0, 0.0, BoundCase::zero_by_theorem};
    const double r_eff = std::min(p.radius, *gamma);
    const double raw = std::exp(log_avoidance(kPi * p.rho * r_eff * r_eff, p.repulsion));
    return {std::min(raw, 1.0), raw, BoundCase::product_bound};
}

double transmission_threshold(const SystemParams& p) {
    if (p.rate_min == 0.0) return kInf;
    if (p.eta >= 1.0)
        throw std::domain_error(
            "rate requirement cannot be met: eta == 1 leaves no decoder branch");
    const double denom = std::expm1(p.rate_min / p.bandwidth * kLn2);
    return p.h_a_effective() * p.p_a / denom - p.sigma2 - p.sigma_sp2 / (1.0 - p.eta);
}

BoundResult transmission_outage_bound(const SystemParams& p) {
    if (p.xi != 1)
        throw std::domain_error(
            "transmission outage bound requires in-band ambient interference (xi == 1)");
    if (p.rate_min == 0.0)
        return power_outage_bound(p);  // no rate requirement, pure power delivery

    // Threshold on pre-split ambient power above which the rate requirement
    // fails; eta == 1 means the requirement can never be met.
    const double t = (p.eta >= 1.0) ? -kInf : transmission_threshold(p);
    const double mu = mean_ambient_antenna_power(p);
    const double deficit = p.p_c - access_point_harvest(p);

    if (deficit <= 0.0) {
        // Device is powered by the access point alone; only the rate can fail.
        const double f_max =
            ambient_pathloss_coefficient(p) / (p.epsilon * p.epsilon);
        if (t >= f_max)
            return {0.0, 0.0, BoundCase::zero_by_theorem};
        if (t > 0.0) {
            const double raw = mu / t;
            return {std::min(raw, 1.0), raw, BoundCase::markov_only};
        }
        return {1.0, 1.0, BoundCase::trivial_one};  // noise alone breaks the rate
    }

    // Powering failure is possible; avoid the disk of the activation distance
    // and Markov-bound the tail above the larger of the two power scales.
    const double etabeta = p.eta * p.beta;
    const double power_scale = etabeta > 0.0 ? deficit / etabeta : kInf;
    const double denom = std::max(t, power_scale);
    const double gamma = *activation_distance(p);
    const double r_eff = std::min(p.radius, gamma);
    const double product = std::exp(log_avoidance(kPi * p.rho * r_eff * r_eff, p.repulsion));
    const double markov = std::isinf(denom) ? 0.0 : mu / denom;
    const double raw = product + markov;
    return {std::min(raw, 1.0), raw, BoundCase::product_plus_markov};
}

}  // namespace swiptsim
