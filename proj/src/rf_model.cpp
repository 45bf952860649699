#include "swiptsim/rf_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "swiptsim/kernels.hpp"

namespace swiptsim {
namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(std::vector<std::string>& errors, double v, const char* name) {
    if (!std::isfinite(v))
        errors.push_back(std::string(name) + " must be finite");
}

}  // namespace

std::vector<std::string> SystemParams::validate() const {
    std::vector<std::string> errors;
    for (auto [v, name] : {std::pair{eta, "eta"}, {beta, "beta"}, {p_a, "p_a"},
                           {g_a, "g_a"}, {lambda_a, "lambda_a"}, {d_a, "d_a"},
                           {h_a, "h_a"}, {p_s, "p_s"}, {g_s, "g_s"}, {lambda, "lambda"},
                           {rho, "rho"}, {radius, "radius"}, {epsilon, "epsilon"},
                           {g_h, "g_h"}, {p_c, "p_c"}, {sigma2, "sigma2"},
                           {sigma_sp2, "sigma_sp2"}, {bandwidth, "bandwidth"},
                           {rate_min, "rate_min"}})
        require_finite(errors, v, name);
    if (!(eta >= 0.0 && eta <= 1.0)) errors.push_back("eta must lie in [0, 1]");
    if (!(beta > 0.0 && beta <= 1.0)) errors.push_back("beta must lie in (0, 1]");
    if (!(p_a >= 0.0)) errors.push_back("p_a must be non-negative");
    if (!(g_a > 0.0)) errors.push_back("g_a must be positive");
    if (!(lambda_a > 0.0)) errors.push_back("lambda_a must be positive");
    if (!(d_a > 0.0)) errors.push_back("d_a must be positive");
    if (!(h_a >= 0.0)) errors.push_back("h_a must be non-negative");
    if (!(p_s >= 0.0)) errors.push_back("p_s must be non-negative");
    if (!(g_s > 0.0)) errors.push_back("g_s must be positive");
    if (!(lambda > 0.0)) errors.push_back("lambda must be positive");
    if (!(rho >= 0.0)) errors.push_back("rho must be non-negative");
    if (!(radius > 0.0)) errors.push_back("radius must be positive");
    if (!(epsilon > 0.0)) errors.push_back("epsilon must be positive");
    if (!(g_h > 0.0)) errors.push_back("g_h must be positive");
    if (!(p_c >= 0.0)) errors.push_back("p_c must be non-negative");
    if (!(sigma2 >= 0.0)) errors.push_back("sigma2 must be non-negative");
    if (!(sigma_sp2 >= 0.0)) errors.push_back("sigma_sp2 must be non-negative");
    if (!(bandwidth > 0.0)) errors.push_back("bandwidth must be positive");
    if (!(rate_min >= 0.0)) errors.push_back("rate_min must be non-negative");
    if (xi != 0 && xi != 1) errors.push_back("xi must be 0 or 1");
    if (repulsion.j < 0) errors.push_back("repulsion copies must be >= 0");
    if (rho >= 0.0 && radius > 0.0 && kPi * rho * radius * radius > 5e6)
        errors.push_back("rho * pi * radius^2 exceeds the sampler capacity (5e6)");
    return errors;
}

void SystemParams::validate_or_throw() const {
    const auto errors = validate();
    if (errors.empty()) return;
    std::string joined = "invalid parameters: ";
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (i) joined += "; ";
        joined += errors[i];
    }
    throw std::invalid_argument(joined);
}

double SystemParams::h_a_effective() const {
    return friis_h_a ? friis_gain(g_a, g_h, lambda_a, d_a) : h_a;
}

double friis_gain(double g_t, double g_r, double wavelength, double distance) {
    if (!(distance > 0.0))
        throw std::domain_error("link distance must be positive");
    const double x = wavelength / (4.0 * kPi * distance);
    return g_t * g_r * x * x;
}

double access_point_harvest(const SystemParams& p) {
    return p.eta * p.beta * p.p_a * friis_gain(p.g_a, p.g_h, p.lambda_a, p.d_a);
}

double ambient_pathloss_coefficient(const SystemParams& p) {
    const double x = p.lambda / (4.0 * kPi);
    return p.p_s * p.g_s * p.g_h * x * x;
}

double ambient_harvest(const SystemParams& p, double pathloss_sum) {
    return p.eta * p.beta * ambient_pathloss_coefficient(p) * pathloss_sum;
}

double total_harvest(const SystemParams& p, const PointPattern& pattern) {
    const double sum = kernels::active_kernels().pathloss_sum(
        pattern.x.data(), pattern.y.data(), pattern.size(), p.epsilon);
    return access_point_harvest(p) + ambient_harvest(p, sum);
}

double decoder_interference(const SystemParams& p, double pathloss_sum) {
    return (1.0 - p.eta) * ambient_pathloss_coefficient(p) * pathloss_sum;
}

double downlink_rate(const SystemParams& p, double interference) {
    const double numer = p.h_a_effective() * (1.0 - p.eta) * p.p_a;
    const double denom = (p.xi ? interference : 0.0) + (1.0 - p.eta) * p.sigma2 + p.sigma_sp2;
    if (!(denom > 0.0))
        throw std::domain_error(
            "downlink SINR denominator vanished (no noise reaches the decoder branch)");
    return p.bandwidth * std::log2(1.0 + numer / denom);
}

}  // namespace swiptsim
