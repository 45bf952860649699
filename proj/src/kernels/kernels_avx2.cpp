#include "swiptsim/kernels.hpp"

#if defined(SWIPTSIM_AVX2_BUILD)

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace swiptsim::kernels {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swap = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swap));
}

double pathloss_sum_avx2(const double* x, const double* y, std::size_t n, double eps) {
    const __m256d veps = _mm256_set1_pd(eps);
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vy = _mm256_loadu_pd(y + i);
        const __m256d r2 = _mm256_fmadd_pd(vx, vx, _mm256_mul_pd(vy, vy));
        const __m256d d = _mm256_add_pd(veps, _mm256_sqrt_pd(r2));
        acc = _mm256_add_pd(acc, _mm256_div_pd(one, _mm256_mul_pd(d, d)));
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        const double d = eps + std::sqrt(x[i] * x[i] + y[i] * y[i]);
        total += 1.0 / (d * d);
    }
    return total;
}

double min_norm2_avx2(const double* x, const double* y, std::size_t n) {
    __m256d best4 = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vy = _mm256_loadu_pd(y + i);
        // plain mul + add keeps lanes bit-identical to the scalar kernel, so
        // thresholded indicators cannot flip between kernel sets
        best4 = _mm256_min_pd(best4,
                              _mm256_add_pd(_mm256_mul_pd(vx, vx), _mm256_mul_pd(vy, vy)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, best4);
    double best = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
    for (; i < n; ++i) {
        const double r2 = x[i] * x[i] + y[i] * y[i];
        if (r2 < best) best = r2;
    }
    return best;
}

// One conjugated dot product, vector lanes plus scalar tail.
inline void dot_row(const double* er, const double* ei,
                    const double* vr, const double* vi, std::size_t n,
                    double& out_re, double& out_im) {
    __m256d cr0 = _mm256_setzero_pd(), cr1 = _mm256_setzero_pd();
    __m256d ci0 = _mm256_setzero_pd(), ci1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d a = _mm256_loadu_pd(er + i);
        __m256d b = _mm256_loadu_pd(ei + i);
        __m256d c = _mm256_loadu_pd(vr + i);
        __m256d d = _mm256_loadu_pd(vi + i);
        cr0 = _mm256_fmadd_pd(a, c, cr0);
        cr0 = _mm256_fmadd_pd(b, d, cr0);
        ci0 = _mm256_fmadd_pd(a, d, ci0);
        ci0 = _mm256_fnmadd_pd(b, c, ci0);
        a = _mm256_loadu_pd(er + i + 4);
        b = _mm256_loadu_pd(ei + i + 4);
        c = _mm256_loadu_pd(vr + i + 4);
        d = _mm256_loadu_pd(vi + i + 4);
        cr1 = _mm256_fmadd_pd(a, c, cr1);
        cr1 = _mm256_fmadd_pd(b, d, cr1);
        ci1 = _mm256_fmadd_pd(a, d, ci1);
        ci1 = _mm256_fnmadd_pd(b, c, ci1);
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(er + i);
        const __m256d b = _mm256_loadu_pd(ei + i);
        const __m256d c = _mm256_loadu_pd(vr + i);
        const __m256d d = _mm256_loadu_pd(vi + i);
        cr0 = _mm256_fmadd_pd(a, c, cr0);
        cr0 = _mm256_fmadd_pd(b, d, cr0);
        ci0 = _mm256_fmadd_pd(a, d, ci0);
        ci0 = _mm256_fnmadd_pd(b, c, ci0);
    }
    double cr = hsum(_mm256_add_pd(cr0, cr1));
    double ci = hsum(_mm256_add_pd(ci0, ci1));
    for (; i < n; ++i) {
        cr += er[i] * vr[i] + ei[i] * vi[i];
        ci += er[i] * vi[i] - ei[i] * vr[i];
    }
    out_re = cr;
    out_im = ci;
}

double projection_norm2_avx2(const double* e_re, const double* e_im,
                             std::size_t rows, std::size_t n,
                             const double* v_re, const double* v_im) {
    double total = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        double cr, ci;
        dot_row(e_re + r * n, e_im + r * n, v_re, v_im, n, cr, ci);
        total += cr * cr + ci * ci;
    }
    return total;
}

void complex_dot_avx2(const double* e_re, const double* e_im,
                      const double* v_re, const double* v_im, std::size_t n,
                      double* out_re, double* out_im) {
    dot_row(e_re, e_im, v_re, v_im, n, *out_re, *out_im);
}

void axpy_sub_avx2(double* v_re, double* v_im,
                   const double* e_re, const double* e_im,
                   double c_re, double c_im, std::size_t n) {
    const __m256d vcr = _mm256_set1_pd(c_re);
    const __m256d vci = _mm256_set1_pd(c_im);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d er = _mm256_loadu_pd(e_re + i);
        const __m256d ei = _mm256_loadu_pd(e_im + i);
        __m256d vr = _mm256_loadu_pd(v_re + i);
        __m256d vi = _mm256_loadu_pd(v_im + i);
        vr = _mm256_fmadd_pd(vci, ei, _mm256_fnmadd_pd(vcr, er, vr));
        vi = _mm256_fnmadd_pd(vci, er, _mm256_fnmadd_pd(vcr, ei, vi));
        _mm256_storeu_pd(v_re + i, vr);
        _mm256_storeu_pd(v_im + i, vi);
    }
    for (; i < n; ++i) {
        v_re[i] -= c_re * e_re[i] - c_im * e_im[i];
        v_im[i] -= c_re * e_im[i] + c_im * e_re[i];
    }
}

const KernelTable avx2_table{
    "avx2",
    pathloss_sum_avx2,
    min_norm2_avx2,
    projection_norm2_avx2,
    complex_dot_avx2,
    axpy_sub_avx2,
};

}  // namespace

const KernelTable* avx2_kernels() {
    static const KernelTable* table = []() -> const KernelTable* {
        if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
            return &avx2_table;
        return nullptr;
    }();
    return table;
}

}  // namespace swiptsim::kernels

#else

namespace swiptsim::kernels {

const KernelTable* avx2_kernels() { return nullptr; }

}  // namespace swiptsim::kernels

#endif
