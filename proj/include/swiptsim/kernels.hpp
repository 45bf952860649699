#pragma once

#include <cstddef>
#include <string_view>

namespace swiptsim::kernels {

// Hot inner loops of the simulator, provided as interchangeable
// implementations.  The scalar table is the reference; vector tables must be
// bit-compatible in rounding-tolerant terms (same pairing of multiplies and
// adds is not required, equivalence tests bound the relative difference).
//
// Complex vectors are stored split (separate real and imaginary arrays).
struct KernelTable {
    const char* name;

    // sum_i 1 / (eps + sqrt(x_i^2 + y_i^2))^2
    double (*pathloss_sum)(const double* x, const double* y, std::size_t n, double eps);

    // min_i (x_i^2 + y_i^2); +infinity when n == 0
    double (*min_norm2)(const double* x, const double* y, std::size_t n);

    // sum over rows r of |<e_r, v>|^2 where e_r is row r of a rows-by-n
    // row-major complex matrix and <a, b> = sum_i conj(a_i) b_i.
    double (*projection_norm2)(const double* e_re, const double* e_im,
                               std::size_t rows, std::size_t n,
                               const double* v_re, const double* v_im);

    // <e, v> = sum_i conj(e_i) v_i, written to (*out_re, *out_im)
    void (*complex_dot)(const double* e_re, const double* e_im,
                        const double* v_re, const double* v_im, std::size_t n,
                        double* out_re, double* out_im);

    // v -= c * e  (complex scalar c)
    void (*axpy_sub)(double* v_re, double* v_im,
                     const double* e_re, const double* e_im,
                     double c_re, double c_im, std::size_t n);
};

const KernelTable& scalar_kernels();

// Null when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2_kernels();

// Best available table, honoring any earlier select_kernels() call and the
// SWIPTSIM_KERNELS environment variable ("scalar" or "avx2").
const KernelTable& active_kernels();

// Force a table by name.  Throws std::invalid_argument for unknown names and
// std::runtime_error when "avx2" is requested on unsupported hardware.
void select_kernels(std::string_view name);

}  // namespace swiptsim::kernels
