#pragma once
// Nth-power nonlinear transform and the dense (Nyquist-rate) spectrum.
//
// Spectral convention, fixed library-wide: a length-L sample vector z and its
// coefficient vector f are related by z = Psi f with the synthesis matrix
// Psi[k][b] = exp(+j 2 pi k b / L) / L. The analysis direction is therefore the
// unnormalized forward DFT, f[b] = sum_k z[k] exp(-j 2 pi k b / L), and bin b
// sits at frequency b * rate_hz / L (modulo rate_hz).

#include "amr/waveforms.hpp"

#include <span>
#include <vector>

namespace amr {

class NptOrder {
public:
    /// Throws ParameterError unless value is 1, 2, 4 or 8.
    explicit NptOrder(int value = 1);

    int value() const noexcept { return value_; }
    /// log2(value): how many complex squarings realize the power.
    int squarings() const noexcept;

    friend bool operator==(NptOrder, NptOrder) = default;

private:
    int value_;
};

struct SpectrumEstimate {
    std::vector<cplx> coeffs;
    double rate_hz = 0.0;
    NptOrder order{1};

    std::size_t size() const noexcept { return coeffs.size(); }
    double bin_hz() const noexcept { return rate_hz / static_cast<double>(coeffs.size()); }
    double frequency(std::size_t bin) const noexcept { return static_cast<double>(bin) * bin_hz(); }
};

/// Elementwise complex power of a raw sample vector.
std::vector<cplx> npt(std::span<const cplx> samples, NptOrder order);

ComplexSignal npt(const ComplexSignal& signal, NptOrder order);

/// Exact length-L DFT coefficients of signal under the Psi convention. The
/// order tag records which nonlinearity the samples already carry.
SpectrumEstimate dense_spectrum(const ComplexSignal& signal, NptOrder tag = NptOrder{1});

/// Samples z = Psi f for a coefficient vector (inverse of dense_spectrum).
ComplexSignal synthesize_from_spectrum(const SpectrumEstimate& spectrum);

/// dense_spectrum(npt(signal, order)), the Nyquist-rate baseline.
SpectrumEstimate nyquist_npt_spectrum(const ComplexSignal& signal, NptOrder order);

} // namespace amr
