#pragma once
// Modulation decision from peak counts, and rough carrier / symbol-rate
// estimates from the positions of the detected lines.
//
// Decision tree (c1, c2, c3 = peak counts of the order 2, 4, 8 spectra):
//   c1 = 3                                -> BPSK
//   c1 = 2, c2 odd (1, 3 or 5)            -> OQPSK
//   c1 = 2, c2 = 2                        -> MSK
//   c1 = 0, c2 in {3, 5}                  -> QPSK
//   c1 = 0, c2 = 0, c3 in {3, 5}          -> 8PSK
//   otherwise                             -> unknown
// The order-8 spectrum is only needed on the c1 = c2 = 0 branch.
//
// OQPSK accepts c2 = 1: its quarter-power +-Rs lines cancel because the
// quadrature arm lags by T_s/2, so only the center line and the weak +-2 Rs
// pair remain, and the pair is often under the continuum at moderate record
// lengths.

#include "amr/features.hpp"
#include "amr/waveforms.hpp"

#include <optional>
#include <string_view>

namespace amr {

using Label = std::optional<ModulationScheme>;

std::string_view to_string(const Label& label) noexcept;

Label classify_counts(const PeakCounts& counts) noexcept;

/// True when the decision needs c3.
bool needs_order8(const PeakCounts& counts) noexcept;

struct ParamEstimate {
    double fc_hz = 0.0;
    double rs_hz = 0.0;
};

/// Line geometry used per label (peak frequencies after unwrapping):
///   BPSK  order 2, 3 (or 5) lines at 2fc + n Rs:  fc = median/2, Rs = mean spacing
///   QPSK  order 4, 3 (or 5) lines at 4fc + n Rs:  fc = median/4, Rs = mean spacing
///   OQPSK order 2, 2 lines at 2fc +- Rs:          fc = midpoint/2, Rs = spacing/2
///   MSK   order 2, 2 lines at 2fc +- Rs/2:        fc = midpoint/2, Rs = spacing
/// For five-line sets only the middle three are used. Returns nullopt for
/// 8PSK/unknown or when the line count does not fit the label.
std::optional<ParamEstimate> estimate_params(ModulationScheme label, const PeakAnalysis& analysis, double rate_hz);

/// Sorted line frequencies, unwrapped across the rate_hz boundary so that the
/// cluster is contiguous (cut at the widest circular gap).
std::vector<double> unwrapped_frequencies(const PeakSet& peaks, double rate_hz);

struct ClassificationResult {
    Label label;
    PeakCounts counts;
    std::optional<double> fc_hat_hz;
    std::optional<double> rs_hat_hz;
    PeakAnalysis analysis;
};

/// Full decision: counts orders 2 and 4, adds order 8 only when needed, then
/// classifies and estimates.
ClassificationResult classify(const SpectrumSource& source, double rate_hz, const PeakPolicy& policy = {});

} // namespace amr
