// AVX2 variants of the kernels in scalar.cpp. Each __m256d holds two complex
// values laid out as [re0, im0, re1, im1]; tails fall back to scalar code that
// performs the same operations in the same order.

#include "amr/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace amr::kernels {
namespace {

inline const double* as_doubles(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* as_doubles(cplx* p) { return reinterpret_cast<double*>(p); }

// [a0, b0, a1, b1] -> [a0^2 - b0^2, 2 a0 b0, a1^2 - b1^2, 2 a1 b1]
inline __m256d square2(__m256d v) {
    const __m256d sq = _mm256_mul_pd(v, v);
    const __m256d re = _mm256_hsub_pd(sq, sq);
    const __m256d swapped = _mm256_permute_pd(v, 0b0101);
    const __m256d ab = _mm256_mul_pd(v, swapped);
    const __m256d im = _mm256_add_pd(ab, ab);
    return _mm256_blend_pd(re, im, 0b1010);
}

// |z|^2 duplicated into both lanes of each complex slot.
inline __m256d norm2_dup(__m256d v) {
    const __m256d sq = _mm256_mul_pd(v, v);
    return _mm256_hadd_pd(sq, sq);
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void power(std::span<const cplx> in, std::span<cplx> out, int squarings) {
    const std::size_t n = in.size();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(as_doubles(in.data() + i));
        for (int s = 0; s < squarings; ++s) v = square2(v);
        _mm256_storeu_pd(as_doubles(out.data() + i), v);
    }
    for (; i < n; ++i) {
        cplx z = in[i];
        for (int s = 0; s < squarings; ++s) {
            const double a = z.real();
            const double b = z.imag();
            const double ab = a * b;
            z = {a * a - b * b, ab + ab};
        }
        out[i] = z;
    }
}

void soft_threshold(std::span<const cplx> a, std::span<const cplx> b, double t, std::span<cplx> out) {
    const std::size_t n = a.size();
    const __m256d tv = _mm256_set1_pd(t);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_sub_pd(_mm256_loadu_pd(as_doubles(a.data() + i)),
                                        _mm256_loadu_pd(as_doubles(b.data() + i)));
        const __m256d m = _mm256_sqrt_pd(norm2_dup(v));
        const __m256d shrunk = _mm256_max_pd(_mm256_sub_pd(m, tv), zero);
        const __m256d ratio = _mm256_div_pd(shrunk, m);
        const __m256d nonzero = _mm256_cmp_pd(m, zero, _CMP_GT_OQ);
        _mm256_storeu_pd(as_doubles(out.data() + i), _mm256_mul_pd(v, _mm256_and_pd(ratio, nonzero)));
    }
    for (; i < n; ++i) {
        const double re = a[i].real() - b[i].real();
        const double im = a[i].imag() - b[i].imag();
        const double m = std::sqrt(re * re + im * im);
        const double ratio = m > 0.0 ? std::max(m - t, 0.0) / m : 0.0;
        out[i] = {re * ratio, im * ratio};
    }
}

void magnitude(std::span<const cplx> in, std::span<double> out) {
    const std::size_t n = in.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v0 = _mm256_loadu_pd(as_doubles(in.data() + i));
        const __m256d v1 = _mm256_loadu_pd(as_doubles(in.data() + i + 2));
        // hadd -> [|z0|^2, |z2|^2, |z1|^2, |z3|^2]
        const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
        const __m256d ordered = _mm256_permute4x64_pd(h, 0b11011000);
        _mm256_storeu_pd(out.data() + i, _mm256_sqrt_pd(ordered));
    }
    for (; i < n; ++i) {
        const double re = in[i].real();
        const double im = in[i].imag();
        out[i] = std::sqrt(re * re + im * im);
    }
}

double norm_sq(std::span<const cplx> in) {
    const std::size_t n = in.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(as_doubles(in.data() + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += in[i].real() * in[i].real() + in[i].imag() * in[i].imag();
    return total;
}

double diff_norm_sq(std::span<const cplx> a, std::span<const cplx> b) {
    const std::size_t n = a.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_sub_pd(_mm256_loadu_pd(as_doubles(a.data() + i)),
                                        _mm256_loadu_pd(as_doubles(b.data() + i)));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        const double re = a[i].real() - b[i].real();
        const double im = a[i].imag() - b[i].imag();
        total += re * re + im * im;
    }
    return total;
}

template <class Op>
inline void binary_op(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out, Op op) {
    const std::size_t n = 2 * a.size();
    const double* pa = as_doubles(a.data());
    const double* pb = as_doubles(b.data());
    double* po = as_doubles(out.data());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(po + i, op(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i)));
    for (; i < n; ++i) {
        const __m256d r = op(_mm256_set1_pd(pa[i]), _mm256_set1_pd(pb[i]));
        po[i] = _mm256_cvtsd_f64(r);
    }
}

void add(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
    binary_op(a, b, out, [](__m256d x, __m256d y) { return _mm256_add_pd(x, y); });
}

void sub(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
    binary_op(a, b, out, [](__m256d x, __m256d y) { return _mm256_sub_pd(x, y); });
}

void accumulate_diff(std::span<cplx> acc, std::span<const cplx> a, std::span<const cplx> b) {
    const std::size_t n = 2 * acc.size();
    double* pacc = as_doubles(acc.data());
    const double* pa = as_doubles(a.data());
    const double* pb = as_doubles(b.data());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i));
        _mm256_storeu_pd(pacc + i, _mm256_add_pd(_mm256_loadu_pd(pacc + i), d));
    }
    for (; i < n; ++i) pacc[i] += pa[i] - pb[i];
}

void scale(std::span<cplx> inout, double factor) {
    const std::size_t n = 2 * inout.size();
    double* p = as_doubles(inout.data());
    const __m256d f = _mm256_set1_pd(factor);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(p + i, _mm256_mul_pd(_mm256_loadu_pd(p + i), f));
    for (; i < n; ++i) p[i] *= factor;
}

} // namespace

namespace detail {
extern const KernelTable avx2_table = {
    Backend::Avx2, "avx2", power, soft_threshold, magnitude, norm_sq,
    diff_norm_sq, add, sub, accumulate_diff, scale,
};
} // namespace detail

} // namespace amr::kernels
