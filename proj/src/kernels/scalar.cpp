#include "amr/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace amr::kernels {
namespace {

inline cplx square(cplx z) {
    const double a = z.real();
    const double b = z.imag();
    const double ab = a * b;
    return {a * a - b * b, ab + ab};
}

void power(std::span<const cplx> in, std::span<cplx> out, int squarings) {
    for (std::size_t i = 0; i < in.size(); ++i) {
        cplx z = in[i];
        for (int s = 0; s < squarings; ++s) z = square(z);
        out[i] = z;
    }
}

void soft_threshold(std::span<const cplx> a, std::span<const cplx> b, double t, std::span<cplx> out) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double re = a[i].real() - b[i].real();
        const double im = a[i].imag() - b[i].imag();
        const double m = std::sqrt(re * re + im * im);
        const double ratio = m > 0.0 ? std::max(m - t, 0.0) / m : 0.0;
        out[i] = {re * ratio, im * ratio};
    }
}

void magnitude(std::span<const cplx> in, std::span<double> out) {
    for (std::size_t i = 0; i < in.size(); ++i) {
        const double re = in[i].real();
        const double im = in[i].imag();
        out[i] = std::sqrt(re * re + im * im);
    }
}

double norm_sq(std::span<const cplx> in) {
    double acc = 0.0;
    for (const cplx& z : in) acc += z.real() * z.real() + z.imag() * z.imag();
    return acc;
}

double diff_norm_sq(std::span<const cplx> a, std::span<const cplx> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double re = a[i].real() - b[i].real();
        const double im = a[i].imag() - b[i].imag();
        acc += re * re + im * im;
    }
    return acc;
}

void add(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
}

void sub(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
}

void accumulate_diff(std::span<cplx> acc, std::span<const cplx> a, std::span<const cplx> b) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += a[i] - b[i];
}

void scale(std::span<cplx> inout, double factor) {
    for (cplx& z : inout) z = {z.real() * factor, z.imag() * factor};
}

} // namespace

namespace detail {
extern const KernelTable scalar_table = {
    Backend::Scalar, "scalar", power, soft_threshold, magnitude, norm_sq,
    diff_norm_sq, add, sub, accumulate_diff, scale,
};
} // namespace detail

} // namespace amr::kernels
