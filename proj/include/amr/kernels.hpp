#pragma once
// Data-parallel inner loops shared by the signal chain and the l1 solver.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The elementwise kernels produce bit-identical results on both
// backends (same operation order, no FMA contraction); only the reductions
// (norm_sq, diff_norm_sq) may differ in the last bits because they sum in a
// different order.

#include <complex>
#include <span>

namespace amr::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

struct KernelTable {
    Backend backend;
    const char* name;

    /// out[i] = in[i]^(2^squarings), by repeated complex squaring. in may alias out.
    void (*power)(std::span<const cplx> in, std::span<cplx> out, int squarings);
    /// out[i] = shrink(a[i] - b[i], t): magnitude reduced by t (floored at 0), phase kept.
    void (*soft_threshold)(std::span<const cplx> a, std::span<const cplx> b, double t,
                           std::span<cplx> out);
    void (*magnitude)(std::span<const cplx> in, std::span<double> out);
    double (*norm_sq)(std::span<const cplx> in);
    double (*diff_norm_sq)(std::span<const cplx> a, std::span<const cplx> b);
    void (*add)(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
    void (*sub)(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
    /// acc[i] += a[i] - b[i]
    void (*accumulate_diff)(std::span<cplx> acc, std::span<const cplx> a, std::span<const cplx> b);
    void (*scale)(std::span<cplx> inout, double factor);
};

/// Table for a specific backend, or nullptr when it is not compiled in or the
/// CPU lacks the instruction set.
const KernelTable* table(Backend backend) noexcept;

/// Backend chosen once per process: AVX2 when available, unless the
/// environment variable AMR_KERNELS is set to "scalar".
const KernelTable& active() noexcept;

} // namespace amr::kernels
