#include "swiptsim/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "swiptsim/format.hpp"
#include "swiptsim/kernels.hpp"
#include "swiptsim/special_math.hpp"

namespace swiptsim {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = 0.6931471805599453;
constexpr double kLog2e = 1.4426950408889634;

}  // namespace

RepulsionParam RepulsionParam::inverse(int j_copies) {
    if (j_copies < 1)
        throw std::invalid_argument("repulsion copies must be >= 1");
    return {j_copies};
}

RepulsionParam RepulsionParam::from_alpha(double alpha) {
    if (alpha == 0.0) return poisson();
    if (alpha < 0.0) {
        const double j_real = -1.0 / alpha;
        const long j = std::lround(j_real);
        if (j >= 1 && j <= 1'000'000'000L &&
            std::fabs(alpha + 1.0 / static_cast<double>(j)) <= 1e-9)
            return {static_cast<int>(j)};
    }
    throw std::invalid_argument("repulsion must be 0 or -1/j for integer j >= 1, got " +
                                format_double(alpha));
}

double GinibreSpectrum::scaled_area() const { return kPi * rho * radius * radius; }

double GinibreSpectrum::trace() const {
    double sum = 0.0, c = 0.0;
    for (double lam : eigenvalues) {
        const double t = lam - c;
        const double s = sum + t;
        c = (s - sum) - t;
        sum = s;
    }
    return sum;
}

double GinibreSpectrum::residual() const { return scaled_area() - trace(); }

GinibreSpectrum build_spectrum(double rho, double radius) {
    if (!(rho >= 0.0))
        throw std::domain_error("intensity must be non-negative");
    if (!(radius > 0.0))
        throw std::domain_error("window radius must be positive");
    GinibreSpectrum s{rho, radius, {}};
    if (rho == 0.0) return s;
    const double a = s.scaled_area();
    if (a > 5e6)
        throw std::domain_error("scaled area too large for spectral decomposition");
    for (int n = 0;; ++n) {
        double lam = regularized_gamma_p(n, a);
        if (lam > 1.0) lam = 1.0;
        if (lam < GinibreSpectrum::kTruncation) break;
        s.eigenvalues.push_back(lam);
    }
    if (!(s.residual() < 1e-9))
        throw std::runtime_error("eigenvalue truncation lost more trace than expected");
    return s;
}

namespace {

// Evaluates the eigenfunctions of a fixed spectrum at arbitrary points, but
// only the orders listed in idx.  The recurrence
//   t_0 = sqrt(rho) e^{-u/2},  t_n = t_{n-1} w / sqrt(n),  w = sqrt(pi rho) z
// yields phi_n = t_n / sqrt(lambda_n); the mantissa/exponent split keeps it
// alive when e^{-u/2} underflows (u can reach pi rho R^2).
struct PhiWorkspace {
    double rho = 0.0;
    double sqrt_pi_rho = 0.0;
    std::vector<int> idx;
    std::vector<double> inv_amp;   // 1 / sqrt(lambda_{idx[i]})
    std::vector<double> inv_sqrt;  // 1 / sqrt(n)

    void prepare(const GinibreSpectrum& s, std::vector<int> indices) {
        rho = s.rho;
        sqrt_pi_rho = std::sqrt(kPi * rho);
        idx = std::move(indices);
        inv_amp.resize(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            inv_amp[i] = 1.0 / std::sqrt(s.eigenvalues[static_cast<std::size_t>(idx[i])]);
        const int top = idx.empty() ? 0 : idx.back();
        inv_sqrt.resize(static_cast<std::size_t>(top) + 1);
        for (int n = 1; n <= top; ++n)
            inv_sqrt[static_cast<std::size_t>(n)] = 1.0 / std::sqrt(static_cast<double>(n));
    }

    void eval(double px, double py, double* out_re, double* out_im) const {
        const std::size_t k = idx.size();
        if (k == 0) return;
        const double u = kPi * rho * (px * px + py * py);
        const double l = 0.5 * std::log(rho) - 0.5 * u;
        int e2 = 0;
        double mant;
        if (l > -600.0) {
            mant = std::exp(l);
        } else {
            e2 = static_cast<int>(std::lround(l * kLog2e));
            mant = std::exp(l - static_cast<double>(e2) * kLn2);
        }
        double tr = mant, ti = 0.0;
        const double wr = sqrt_pi_rho * px;
        const double wi = sqrt_pi_rho * py;
        std::size_t pos = 0;
        for (int n = 0;; ++n) {
            if (idx[pos] == n) {
                out_re[pos] = std::ldexp(tr * inv_amp[pos], e2);
                out_im[pos] = std::ldexp(ti * inv_amp[pos], e2);
                if (++pos == k) break;
            }
            const double s = inv_sqrt[static_cast<std::size_t>(n) + 1];
            const double nr = (tr * wr - ti * wi) * s;
            const double ni = (tr * wi + ti * wr) * s;
            tr = nr;
            ti = ni;
            const double m = std::fabs(tr) + std::fabs(ti);
            if (m < 0x1p-512) {
                if (m == 0.0) {
                    // z == 0: all higher orders vanish exactly.
                    for (; pos < k; ++pos) out_re[pos] = out_im[pos] = 0.0;
                    break;
                }
                tr = std::ldexp(tr, 512);
                ti = std::ldexp(ti, 512);
                e2 -= 512;
            } else if (m > 0x1p512) {
                tr = std::ldexp(tr, -512);
                ti = std::ldexp(ti, -512);
                e2 += 512;
            }
        }
    }
};

// Sum over the retained orders of sup_z |phi_n(z)|^2; |phi_n|^2 depends on z
// only through u = pi rho |z|^2 and peaks at u = min(n, pi rho R^2).  The pad
// absorbs rounding differences against the recurrence evaluation.
double rejection_envelope(const GinibreSpectrum& s, const std::vector<int>& retained) {
    const double a = s.scaled_area();
    const double log_rho = std::log(s.rho);
    double m = 0.0;
    for (int n : retained) {
        const double lam = s.eigenvalues[static_cast<std::size_t>(n)];
        double le = log_rho - std::log(lam);
        if (n > 0) {
            const double us = std::min(static_cast<double>(n), a);
            le += static_cast<double>(n) * std::log(us) - us - log_factorial(n);
        }
        m += std::exp(le);
    }
    return m * (1.0 + 1e-9);
}

// Draws one thinned projection realization and appends it to out.  thin is
// the Bernoulli retention multiplier applied to every eigenvalue (1 for the
// plain determinantal process, 1/j per copy of the -1/j superposition).
void append_projection_sample(const GinibreSpectrum& s, double thin, Xoshiro256& rng,
                              const SamplerOptions& options, PointPattern& out) {
    const std::size_t m = s.eigenvalues.size();
    if (m == 0) return;

    std::vector<int> retained;
    for (std::size_t n = 0; n < m; ++n)
        if (rng.uniform01() < s.eigenvalues[n] * thin)
            retained.push_back(static_cast<int>(n));
    const std::size_t k = retained.size();
    if (k == 0) return;

    const double envelope = rejection_envelope(s, retained);
    PhiWorkspace ws;
    ws.prepare(s, std::move(retained));

    const auto& kt = kernels::active_kernels();
    std::vector<double> e_re(k * k), e_im(k * k), v_re(k), v_im(k);
    std::size_t rows = 0;

    for (std::size_t point = 0; point < k; ++point) {
        bool accepted = false;
        for (std::int64_t attempt = 0; attempt < options.retry_budget; ++attempt) {
            const double r = s.radius * std::sqrt(rng.uniform01());
            const double th = 2.0 * kPi * rng.uniform01();
            const double gate = rng.uniform01() * envelope;
            const double px = r * std::cos(th);
            const double py = r * std::sin(th);
            ws.eval(px, py, v_re.data(), v_im.data());
            double diag = 0.0;
            for (std::size_t i = 0; i < k; ++i)
                diag += v_re[i] * v_re[i] + v_im[i] * v_im[i];
            if (gate >= diag) continue;  // cheap pre-test, no projection needed
            const double proj =
                rows ? kt.projection_norm2(e_re.data(), e_im.data(), rows, k,
                                           v_re.data(), v_im.data())
                     : 0.0;
            if (gate >= diag - proj) continue;

            // Accepted: orthonormalize against the previous rows.  Two
            // Gram-Schmidt passes keep the basis orthonormal to working
            // precision, and this path runs only k times per realization.
            for (int pass = 0; pass < 2 && rows > 0; ++pass) {
                for (std::size_t r2 = 0; r2 < rows; ++r2) {
                    double cr, ci;
                    kt.complex_dot(&e_re[r2 * k], &e_im[r2 * k], v_re.data(), v_im.data(), k,
                                   &cr, &ci);
                    kt.axpy_sub(v_re.data(), v_im.data(), &e_re[r2 * k], &e_im[r2 * k], cr, ci,
                                k);
                }
            }
            double nrm2 = 0.0;
            for (std::size_t i = 0; i < k; ++i)
                nrm2 += v_re[i] * v_re[i] + v_im[i] * v_im[i];
            if (!(nrm2 > 0.0) || !std::isfinite(nrm2)) continue;  // degenerate, retry
            const double inv = 1.0 / std::sqrt(nrm2);
            for (std::size_t i = 0; i < k; ++i) {
                e_re[rows * k + i] = v_re[i] * inv;
                e_im[rows * k + i] = v_im[i] * inv;
            }
            ++rows;
            out.add(px, py);
            accepted = true;
            break;
        }
        if (!accepted) throw SamplingError(point, options.retry_budget);
    }
}

}  // namespace

SamplingError::SamplingError(std::size_t point_index_, std::int64_t attempts_)
    : std::runtime_error("point sampler stalled at point " + std::to_string(point_index_) +
                         " after " + std::to_string(attempts_) + " rejection attempts"),
      point_index(point_index_),
      attempts(attempts_) {}

void eval_eigenfunctions(const GinibreSpectrum& spectrum, double px, double py,
                         std::span<double> out_re, std::span<double> out_im) {
    if (out_re.size() != out_im.size())
        throw std::invalid_argument("output spans must be the same length");
    if (out_re.size() > spectrum.eigenvalues.size())
        throw std::invalid_argument("more eigenfunctions requested than eigenvalues stored");
    if (out_re.empty()) return;
    std::vector<int> idx(out_re.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    PhiWorkspace ws;
    ws.prepare(spectrum, std::move(idx));
    ws.eval(px, py, out_re.data(), out_im.data());
}

PointPattern sample_poisson(double rho, double radius, Xoshiro256& rng) {
    if (!(rho >= 0.0))
        throw std::domain_error("intensity must be non-negative");
    if (!(radius > 0.0))
        throw std::domain_error("window radius must be positive");
    PointPattern p;
    p.window_radius = radius;
    const double mean = kPi * rho * radius * radius;
    if (mean == 0.0) return p;
    std::poisson_distribution<long long> count(mean);
    const long long n = count(rng);
    p.x.reserve(static_cast<std::size_t>(n));
    p.y.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        const double r = radius * std::sqrt(rng.uniform01());
        const double th = 2.0 * kPi * rng.uniform01();
        p.add(r * std::cos(th), r * std::sin(th));
    }
    return p;
}

PointPattern sample_determinantal(const GinibreSpectrum& spectrum, Xoshiro256& rng,
                                  const SamplerOptions& options) {
    PointPattern p;
    p.window_radius = spectrum.radius;
    append_projection_sample(spectrum, 1.0, rng, options, p);
    return p;
}

PointPattern sample_point_process(const GinibreSpectrum& spectrum, RepulsionParam repulsion,
                                  Xoshiro256& rng, const SamplerOptions& options) {
    if (repulsion.is_poisson())
        return sample_poisson(spectrum.rho, spectrum.radius, rng);
    PointPattern p;
    p.window_radius = spectrum.radius;
    const double thin = 1.0 / static_cast<double>(repulsion.j);
    for (int copy = 0; copy < repulsion.j; ++copy)
        append_projection_sample(spectrum, thin, rng, options, p);
    return p;
}

void write_patterns_csv(std::ostream& out, const std::vector<PointPattern>& patterns) {
    std::string buf = "trial,x,y\n";
    for (std::size_t t = 0; t < patterns.size(); ++t) {
        const PointPattern& p = patterns[t];
        for (std::size_t i = 0; i < p.size(); ++i) {
            buf += std::to_string(t);
            buf += ',';
            append_double(buf, p.x[i]);
            buf += ',';
            append_double(buf, p.y[i]);
            buf += '\n';
        }
    }
    out << buf;
}

}  // namespace swiptsim
