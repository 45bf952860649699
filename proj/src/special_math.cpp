#include "swiptsim/special_math.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace swiptsim {
namespace {

constexpr int kMaxIter = 20000;
constexpr double kEps = 1e-16;
constexpr double kFpMin = 1e-300;

// Series expansion of the lower tail, reliable for a < s + 1.
// P(s, a) = e^{-a} a^s sum_k a^k / Gamma(s + 1 + k)
double lower_series(double s, double a, double log_prefactor) {
    double ap = s;
    double del = 1.0 / s;
    double sum = del;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= a / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps)
            return sum * std::exp(log_prefactor) * s;
    }
    throw std::runtime_error("incomplete gamma series failed to converge");
}

// Modified Lentz continued fraction for the upper tail, reliable for
// a >= s + 1.  Returns ln of the fraction part; the caller adds the
// log-prefactor so the total survives far into the underflow range.
double log_upper_cf(double s, double a) {
    double b = a + 1.0 - s;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = b + an / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps)
            return std::log(h);
    }
    throw std::runtime_error("incomplete gamma continued fraction failed to converge");
}

void check_domain(int n, double a) {
    if (n < 0)
        throw std::domain_error("incomplete gamma order must be non-negative");
    if (!(a >= 0.0))
        throw std::domain_error("incomplete gamma argument must be non-negative");
}

}  // namespace

double regularized_gamma_p(int n, double a) {
    check_domain(n, a);
    if (a == 0.0) return 0.0;
    const double s = static_cast<double>(n) + 1.0;
    const double log_prefactor = -a + s * std::log(a) - std::lgamma(s + 1.0);
    if (a < s + 1.0)
        return lower_series(s, a, log_prefactor);
    const double log_q = (log_prefactor + std::log(s)) + log_upper_cf(s, a);
    return -std::expm1(log_q);
}

double log_regularized_gamma_q(int n, double a) {
    check_domain(n, a);
    if (a == 0.0) return 0.0;
    const double s = static_cast<double>(n) + 1.0;
    if (a < s + 1.0) {
        // Lower tail is at most ~0.87 here, so 1 - P loses no precision.
        return std::log1p(-regularized_gamma_p(n, a));
    }
    const double log_prefactor = -a + s * std::log(a) - std::lgamma(s);
    return log_prefactor + log_upper_cf(s, a);
}

double log_factorial(int n) {
    if (n < 0)
        throw std::domain_error("factorial of negative integer");
    static const std::array<double, 21> exact = [] {
        std::array<double, 21> t{};
        t[0] = 0.0;
        double f = 1.0;
        for (int i = 1; i <= 20; ++i) {
            f *= static_cast<double>(i);
            t[static_cast<std::size_t>(i)] = std::log(f);
        }
        return t;
    }();
    if (n <= 20) return exact[static_cast<std::size_t>(n)];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace swiptsim
