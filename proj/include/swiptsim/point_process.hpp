#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "swiptsim/rng.hpp"

namespace swiptsim {

// Planar point set restricted to a centered disk, stored column-wise so the
// per-point loops vectorize.
struct PointPattern {
    std::vector<double> x;
    std::vector<double> y;
    double window_radius = 0.0;

    std::size_t size() const { return x.size(); }
    void add(double px, double py) {
        x.push_back(px);
        y.push_back(py);
    }
    void clear() {
        x.clear();
        y.clear();
    }
};

// Repulsion parameter of the transmitter process, restricted to the values
// with an exact sampling algorithm: 0 (independent scatter) and -1/j for
// integer j >= 1 (j == 1 being the most repulsive, Ginibre-like case).
struct RepulsionParam {
    int j = 0;  // 0 encodes alpha = 0; otherwise alpha = -1/j

    static RepulsionParam poisson() { return {0}; }
    static RepulsionParam inverse(int j_copies);
    // Accepts 0 and values within 1e-9 of -1/j; throws std::invalid_argument
    // otherwise.
    static RepulsionParam from_alpha(double alpha);

    double alpha() const { return j == 0 ? 0.0 : -1.0 / static_cast<double>(j); }
    bool is_poisson() const { return j == 0; }

    friend bool operator==(const RepulsionParam&, const RepulsionParam&) = default;
};

// Eigenvalues of the disk-restricted Gaussian-kernel integral operator at
// intensity rho: lambda_n = P(n + 1, pi rho R^2), truncated once they drop
// below kTruncation.  The same object carries what the eigenfunction
// evaluator needs, so samplers and analytic formulas share one source.
struct GinibreSpectrum {
    double rho = 0.0;
    double radius = 0.0;
    std::vector<double> eigenvalues;

    static constexpr double kTruncation = 1e-12;

    double scaled_area() const;       // pi * rho * radius^2
    double trace() const;             // sum of eigenvalues
    double residual() const;          // scaled_area() - trace()
};

// rho == 0 yields an empty spectrum; rho < 0 or radius <= 0 throws
// std::domain_error.  The truncated trace is checked against the analytic
// trace (residual below 1e-9) and a violation throws std::runtime_error.
GinibreSpectrum build_spectrum(double rho, double radius);

// Orthonormal eigenfunctions phi_n evaluated at (px, py) for
// n = 0 .. out_re.size()-1.  Both spans must be the same length, at most the
// number of stored eigenvalues.
void eval_eigenfunctions(const GinibreSpectrum& spectrum, double px, double py,
                         std::span<double> out_re, std::span<double> out_im);

struct SamplerOptions {
    // Rejection attempts allowed per point before giving up.
    std::int64_t retry_budget = 1'000'000;
};

class SamplingError : public std::runtime_error {
public:
    SamplingError(std::size_t point_index, std::int64_t attempts);
    std::size_t point_index;
    std::int64_t attempts;
};

// Homogeneous independent scatter of intensity rho on the disk.
PointPattern sample_poisson(double rho, double radius, Xoshiro256& rng);

// Exact spectral sampler for the determinantal (alpha = -1) process:
// Bernoulli-thin the eigenvalues, then draw the resulting projection process
// by rejection with a per-realization envelope and sequential
// orthogonalization against the accepted points.
PointPattern sample_determinantal(const GinibreSpectrum& spectrum, Xoshiro256& rng,
                                  const SamplerOptions& options = {});

// alpha = -1/j realized as the union of j independent copies with eigenvalues
// lambda_n / j; alpha = 0 falls back to the independent sampler.
PointPattern sample_point_process(const GinibreSpectrum& spectrum, RepulsionParam repulsion,
                                  Xoshiro256& rng, const SamplerOptions& options = {});

// CSV dump, header "trial,x,y", one row per point.
void write_patterns_csv(std::ostream& out, const std::vector<PointPattern>& patterns);

}  // namespace swiptsim
