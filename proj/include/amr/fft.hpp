#pragma once
// Thin, thread-safe front end over FFTW. Plans are created once per
// (length, direction, placement) with FFTW_ESTIMATE, so results are
// reproducible run to run, and then executed through the new-array interface,
// which FFTW guarantees is safe to call concurrently.

#include <complex>
#include <span>

namespace amr::fft {

using cplx = std::complex<double>;

/// out[b] = sum_k in[k] exp(-j 2 pi k b / n). in and out may be the same buffer.
void forward(std::span<const cplx> in, std::span<cplx> out);

/// out[k] = sum_b in[b] exp(+j 2 pi k b / n), unnormalized.
void backward(std::span<const cplx> in, std::span<cplx> out);

} // namespace amr::fft
