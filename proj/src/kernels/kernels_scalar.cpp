#include "swiptsim/kernels.hpp"

#include <cmath>
#include <limits>

namespace swiptsim::kernels {
namespace {

double pathloss_sum_scalar(const double* x, const double* y, std::size_t n, double eps) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = eps + std::sqrt(x[i] * x[i] + y[i] * y[i]);
        acc += 1.0 / (d * d);
    }
    return acc;
}

double min_norm2_scalar(const double* x, const double* y, std::size_t n) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double r2 = x[i] * x[i] + y[i] * y[i];
        if (r2 < best) best = r2;
    }
    return best;
}

double projection_norm2_scalar(const double* e_re, const double* e_im,
                               std::size_t rows, std::size_t n,
                               const double* v_re, const double* v_im) {
    double total = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        const double* er = e_re + r * n;
        const double* ei = e_im + r * n;
        double cr = 0.0, ci = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cr += er[i] * v_re[i] + ei[i] * v_im[i];
            ci += er[i] * v_im[i] - ei[i] * v_re[i];
        }
        total += cr * cr + ci * ci;
    }
    return total;
}

void complex_dot_scalar(const double* e_re, const double* e_im,
                        const double* v_re, const double* v_im, std::size_t n,
                        double* out_re, double* out_im) {
    double cr = 0.0, ci = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cr += e_re[i] * v_re[i] + e_im[i] * v_im[i];
        ci += e_re[i] * v_im[i] - e_im[i] * v_re[i];
    }
    *out_re = cr;
    *out_im = ci;
}

void axpy_sub_scalar(double* v_re, double* v_im,
                     const double* e_re, const double* e_im,
                     double c_re, double c_im, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        v_re[i] -= c_re * e_re[i] - c_im * e_im[i];
        v_im[i] -= c_re * e_im[i] + c_im * e_re[i];
    }
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{
        "scalar",
        pathloss_sum_scalar,
        min_norm2_scalar,
        projection_norm2_scalar,
        complex_dot_scalar,
        axpy_sub_scalar,
    };
    return table;
}

}  // namespace swiptsim::kernels
