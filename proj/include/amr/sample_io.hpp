#pragma once
// Text sample files: a header line "N rate_hz" followed by N lines "re im".
// N counts the lines that follow: L for Nyquist-rate records, M_meas for
// compressive measurement vectors (rate_hz is then the underlying uniform rate).

#include "amr/waveforms.hpp"

#include <iosfwd>
#include <string>

namespace amr {

void write_samples(std::ostream& os, const ComplexSignal& signal);
ComplexSignal read_samples(std::istream& is);

void save_samples(const std::string& path, const ComplexSignal& signal);
ComplexSignal load_samples(const std::string& path);

} // namespace amr
