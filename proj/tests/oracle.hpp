#pragma once

// Test-only reference implementations.  Everything here is deliberately
// independent of the library's numerics: integrals are done by adaptive
// quadrature and tail sums by direct pmf accumulation, so they can serve as
// oracles for the closed forms in the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>

namespace oracle {

inline double rel_err(double got, double want) {
    const double scale = std::max(std::fabs(want), 1e-300);
    return std::fabs(got - want) / scale;
}

namespace detail {

inline double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive(const std::function<double(double)>& f, double a, double b, double fa,
                       double fm, double fb, double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0)
        return left + right + delta / 15.0;
    if (std::fabs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return adaptive(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature; eps is an absolute tolerance.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps, int depth = 60) {
    if (!(b > a)) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = detail::simpson(a, b, fa, fm, fb);
    return detail::adaptive(f, a, b, fa, fm, fb, whole, eps, depth);
}

// Lower regularized incomplete gamma P(n+1, a) as a quadrature of
// t^n e^{-t} / n! over [0, a].  Two regimes: for a <= 1 the substitution
// t = a u^{1/(n+1)} turns the power-law factor into a constant, leaving a
// near-flat integrand on [0, 1]; for larger a the integrand is evaluated
// through its log over segments bracketing the peak, so the peak can never
// hide between the first quadrature samples.  Negligible tails beyond
// 60 sigma of the peak are cut off.
inline double regularized_gamma_p_quad(int n, double a) {
    if (n < 0 || a < 0.0) throw std::domain_error("bad oracle arguments");
    if (a == 0.0) return 0.0;
    const double s = static_cast<double>(n) + 1.0;

    if (a <= 1.0) {
        auto g = [s, a](double u) {
            if (u <= 0.0) return 1.0;
            return std::exp(-a * std::pow(u, 1.0 / s));
        };
        const double integral = integrate(g, 0.0, 1.0, 1e-16);
        return std::exp(s * std::log(a) - std::lgamma(s + 1.0)) * integral;
    }

    const double lf = std::lgamma(s);
    auto f = [n, lf](double t) {
        if (t <= 0.0) return n == 0 ? std::exp(-lf) : 0.0;
        return std::exp(static_cast<double>(n) * std::log(t) - t - lf);
    };
    const double peak = std::min(static_cast<double>(n), a);
    const double sig = std::sqrt(s) + 1.0;
    const double lo = std::max(0.0, peak - 60.0 * sig - 60.0);
    const double hi = std::min(a, peak + 60.0 * sig + 60.0);

    double knots[7] = {lo,          peak - 10.0 * sig, peak - 2.0 * sig, peak,
                       peak + 2.0 * sig, peak + 10.0 * sig, hi};
    for (double& k : knots) k = std::min(hi, std::max(lo, k));
    std::sort(std::begin(knots), std::end(knots));

    // Magnitude estimate at the peak fixes the absolute tolerance so the
    // result carries ~1e-13 relative accuracy even deep in the underflow
    // range.
    const double mag = f(peak == 0.0 ? std::min(a, 1.0) : peak);
    const double eps = std::max(mag * std::max(hi - lo, 1.0) * 1e-15, 1e-320);
    double total = 0.0;
    for (int i = 0; i + 1 < 7; ++i)
        if (knots[i + 1] > knots[i]) total += integrate(f, knots[i], knots[i + 1], eps);
    return total;
}

// Tail probability of a Poisson(a) variable: sum of pmf(k) for k > n.
inline double poisson_tail(int n, double a) {
    if (a == 0.0) return 0.0;
    double sum = 0.0;
    double log_pmf = -a + static_cast<double>(n + 1) * std::log(a) -
                     std::lgamma(static_cast<double>(n) + 2.0);
    double pmf = std::exp(log_pmf);
    for (int k = n + 1;; ++k) {
        sum += pmf;
        pmf *= a / static_cast<double>(k + 1);
        if (pmf < sum * 1e-18 && k > n + 4) break;
        if (k > n + 100000) break;
    }
    return sum;
}

inline std::uint64_t factorial_u64(int n) {
    if (n < 0 || n > 20) throw std::domain_error("factorial_u64 needs 0 <= n <= 20");
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

// Wilson-Hilferty approximation of the chi-square quantile, good to a few
// tenths of a percent for df >= 10; plenty for a 1% goodness-of-fit gate.
inline double chi_square_critical(double df, double z_upper) {
    const double t = 2.0 / (9.0 * df);
    const double x = 1.0 - t + z_upper * std::sqrt(t);
    return df * x * x * x;
}

}  // namespace oracle
