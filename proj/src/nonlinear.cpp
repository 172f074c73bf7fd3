#include "amr/nonlinear.hpp"

#include "amr/error.hpp"
#include "amr/fft.hpp"
#include "amr/kernels.hpp"

#include <string>

namespace amr {

NptOrder::NptOrder(int value) : value_(value) {
    if (value != 1 && value != 2 && value != 4 && value != 8)
        throw ParameterError("NPT order must be 1, 2, 4 or 8, got " + std::to_string(value));
}

int NptOrder::squarings() const noexcept {
    switch (value_) {
    case 2: return 1;
    case 4: return 2;
    case 8: return 3;
    default: return 0;
    }
}

std::vector<cplx> npt(std::span<const cplx> samples, NptOrder order) {
    std::vector<cplx> out(samples.size());
    kernels::active().power(samples, out, order.squarings());
    return out;
}

ComplexSignal npt(const ComplexSignal& signal, NptOrder order) {
    return {npt(signal.samples, order), signal.rate_hz};
}

SpectrumEstimate dense_spectrum(const ComplexSignal& signal, NptOrder tag) {
    SpectrumEstimate out{std::vector<cplx>(signal.size()), signal.rate_hz, tag};
    fft::forward(signal.samples, out.coeffs);
    return out;
}

ComplexSignal synthesize_from_spectrum(const SpectrumEstimate& spectrum) {
    ComplexSignal out{std::vector<cplx>(spectrum.size()), spectrum.rate_hz};
    fft::backward(spectrum.coeffs, out.samples);
    if (!out.samples.empty()) kernels::active().scale(out.samples, 1.0 / static_cast<double>(out.size()));
    return out;
}

SpectrumEstimate nyquist_npt_spectrum(const ComplexSignal& signal, NptOrder order) {
    return dense_spectrum(npt(signal, order), order);
}

} // namespace amr
