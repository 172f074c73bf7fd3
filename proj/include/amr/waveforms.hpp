#pragma once
// Synthetic PSK-family transmissions sampled uniformly at the Nyquist rate.
//
// Conventions used throughout the library:
//   * sample k sits at t = k / nyquist_rate_hz, k = 0 .. L-1;
//   * L = num_symbols * samples_per_symbol;
//   * signals are complex (analytic), so the carrier is exp(+j 2 pi fc t).

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace amr {

using cplx = std::complex<double>;

enum class ModulationScheme { BPSK, QPSK, PSK8, OQPSK, MSK };

inline constexpr ModulationScheme kAllSchemes[] = {
    ModulationScheme::BPSK, ModulationScheme::QPSK, ModulationScheme::PSK8,
    ModulationScheme::OQPSK, ModulationScheme::MSK,
};

std::string_view to_string(ModulationScheme scheme) noexcept;
/// Accepts the lower-case CLI spellings: bpsk, qpsk, 8psk, oqpsk, msk.
std::optional<ModulationScheme> parse_scheme(std::string_view name) noexcept;
/// Number of constellation phases for the MPSK schemes (2, 4, 8); 0 otherwise.
int phase_count(ModulationScheme scheme) noexcept;

struct SignalSpec {
    ModulationScheme scheme = ModulationScheme::BPSK;
    double amplitude = 1.0;
    double carrier_hz = 500.0;
    /// 1/T_s. For MSK this is the rate of the T_b intervals of the quadrature
    /// model (one bit per interval); for OQPSK a symbol carries two bits and the
    /// arms are offset by T_s/2.
    double symbol_rate_hz = 800.0;
    double rolloff = 0.5;
    std::size_t num_symbols = 1024;
    double nyquist_rate_hz = 6400.0;
    std::uint64_t seed = 0;

    int samples_per_symbol() const;
    std::size_t length() const { return num_symbols * static_cast<std::size_t>(samples_per_symbol()); }

    /// Throws ParameterError on any violation. deepest_order is the highest
    /// nonlinearity the caller intends to analyze (4 or 8); the carrier line
    /// N*fc plus three symbol-rate harmonics must stay within the band.
    void validate(int deepest_order = 4) const;
};

struct ComplexSignal {
    std::vector<cplx> samples;
    double rate_hz = 0.0;

    std::size_t size() const noexcept { return samples.size(); }
};

/// Test hooks for synthesize(); default-constructed means normal operation.
struct SynthesisHooks {
    /// Every symbol is m_n = 1 (a_n = b_n = +1 for OQPSK/MSK).
    bool constant_symbols = false;
};

/// Unit-energy root raised cosine taps, span_symbols * sps + 1 long, centered.
std::vector<double> rrc_pulse(double rolloff, int span_symbols, int samples_per_symbol);

/// Closed-form RRC impulse response at t (in symbol periods, T_s = 1), with
/// the removable singularities replaced by their limits. Not normalized.
double rrc_impulse(double rolloff, double t);

/// out[k] = sum_n symbols[n] * taps[k - n*sps - offset + (taps.size()-1)/2],
/// truncated to [0, length). Pulses that straddle the record edges are kept
/// partially (no cyclic extension).
std::vector<cplx> pulse_train(std::span<const cplx> symbols, std::span<const double> taps, int sps,
                              int offset, std::size_t length);

/// The complex envelope A * baseband(t), before the carrier is applied.
ComplexSignal synthesize_baseband(const SignalSpec& spec, const SynthesisHooks& hooks = {});

ComplexSignal synthesize(const SignalSpec& spec, const SynthesisHooks& hooks = {});

/// Adds circular complex white Gaussian noise with per-sample variance
/// P_s / 10^(snr_db/10), P_s the empirical mean power of signal. snr_db = +inf
/// returns the input unchanged.
ComplexSignal add_awgn(const ComplexSignal& signal, double snr_db, std::uint64_t seed);

/// Noise of an explicit per-sample variance, added to signal.
ComplexSignal add_noise_variance(const ComplexSignal& signal, double variance, std::uint64_t seed);

double mean_power(std::span<const cplx> samples) noexcept;

inline constexpr int kDefaultRrcSpan = 8;

} // namespace amr
